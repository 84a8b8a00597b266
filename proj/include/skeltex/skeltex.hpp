#pragma once

// Umbrella header.

#include "skeltex/baseline.hpp"
#include "skeltex/config.hpp"
#include "skeltex/encode.hpp"
#include "skeltex/error.hpp"
#include "skeltex/evaluation.hpp"
#include "skeltex/features.hpp"
#include "skeltex/fixtures.hpp"
#include "skeltex/fusion.hpp"
#include "skeltex/geometry.hpp"
#include "skeltex/image.hpp"
#include "skeltex/image_set.hpp"
#include "skeltex/joints.hpp"
#include "skeltex/pipeline.hpp"
#include "skeltex/preprocess.hpp"
#include "skeltex/selection.hpp"
#include "skeltex/selftest.hpp"
#include "skeltex/skeleton.hpp"
#include "skeltex/synthetic.hpp"
