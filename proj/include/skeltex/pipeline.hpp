#pragma once

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "skeltex/config.hpp"
#include "skeltex/error.hpp"
#include "skeltex/image.hpp"
#include "skeltex/image_set.hpp"
#include "skeltex/preprocess.hpp"
#include "skeltex/skeleton.hpp"

namespace skeltex {

inline std::string sha256_hex(std::span<const std::uint8_t> bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr))
    throw Error("SHA-256 computation failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

inline std::string sha256_hex(std::string_view text) {
  return sha256_hex(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

/// Hash of the canonical JSON form of a configuration.
inline std::string config_hash(const PipelineConfig& c) { return sha256_hex(to_json(c).dump()); }

struct SequenceOutcome {
  std::string input;
  std::string source_id;
  bool ok = false;
  std::string error;
  std::size_t frames = 0;
  bool shadow = false;
  std::vector<std::pair<std::string, std::string>> outputs;  // (file name, sha256)
  std::vector<std::string> labels;
};

struct RunReport {
  std::vector<SequenceOutcome> sequences;
  nlohmann::json manifest;

  bool ok() const {
    return std::all_of(sequences.begin(), sequences.end(), [](const SequenceOutcome& s) { return s.ok; });
  }
};

/// Writes the configured image set of one normalized sequence into `out_dir`
/// and verifies each file by reading it back.
inline std::vector<std::pair<std::string, std::string>> write_image_set(const ImageSetEncoder& encoder,
                                                                         const NormalizedSequence& seq,
                                                                         std::span<const std::string> labels,
                                                                         const std::filesystem::path& out_dir) {
  std::vector<std::pair<std::string, std::string>> outputs;
  for (const auto& label : labels) {
    const auto bytes = encode_png(encoder.encode(seq, label));
    const std::string name = image_filename(seq.source_id, label);
    write_file_atomic(out_dir / name, bytes);
    const std::string digest = sha256_hex(bytes);
    if (sha256_hex(read_file_bytes(out_dir / name)) != digest)
      throw IoError("verification failed for " + (out_dir / name).string());
    outputs.emplace_back(name, digest);
  }
  return outputs;
}

/// parse -> preprocess -> encode for every input, `jobs` sequences at a time.
/// A failing sequence is logged and recorded; the others still run. The manifest
/// (inputs, config hash, output checksums) goes to `out_dir/manifest.json`.
inline RunReport run_pipeline(const PipelineConfig& config, std::span<const std::filesystem::path> inputs,
                              const std::filesystem::path& out_dir, unsigned jobs = 1,
                              std::ostream* log = nullptr) {
  validate(config);
  std::filesystem::create_directories(out_dir);
  const ImageSetEncoder encoder(config.selection, config.image_size);

  RunReport report;
  report.sequences.resize(inputs.size());
  std::mutex log_mutex;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < inputs.size(); i = next++) {
      SequenceOutcome& out = report.sequences[i];
      out.input = inputs[i].string();
      out.source_id = inputs[i].stem().string();
      try {
        const SkeletonSequence seq = parse_skeleton_file(inputs[i]);
        const NormalizedSequence ns = preprocess(seq);
        out.frames = ns.frame_count();
        out.shadow = ns.shadow_flag;
        out.outputs = write_image_set(encoder, ns, config.labels, out_dir);
        out.labels = config.labels;
        out.ok = true;
      } catch (const std::exception& e) {
        out.error = e.what();
        if (log) {
          std::lock_guard lock(log_mutex);
          *log << "[" << out.source_id << "] failed: " << e.what() << '\n';
        }
      }
    }
  };

  const unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(inputs.size())));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }

  nlohmann::json seqs = nlohmann::json::array();
  for (const auto& s : report.sequences) {
    nlohmann::json files = nlohmann::json::array();
    for (std::size_t k = 0; k < s.outputs.size(); ++k)
      files.push_back({{"label", s.labels[k]}, {"file", s.outputs[k].first}, {"sha256", s.outputs[k].second}});
    nlohmann::json entry{{"input", s.input}, {"source_id", s.source_id}, {"status", s.ok ? "ok" : "error"}};
    if (s.ok) {
      entry["frames"] = s.frames;
      entry["shadow_subject"] = s.shadow;
      entry["outputs"] = files;
    } else {
      entry["error"] = s.error;
    }
    seqs.push_back(entry);
  }
  report.manifest = {{"config_sha256", config_hash(config)},
                     {"image_size", {config.image_size.height, config.image_size.width}},
                     {"sequences", seqs}};
  const std::string text = report.manifest.dump(2) + "\n";
  write_file_atomic(out_dir / "manifest.json",
                    std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  return report;
}

}  // namespace skeltex
