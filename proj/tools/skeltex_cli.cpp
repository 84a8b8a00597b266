// skeltex command line: parse, preprocess, extract, encode, train-baseline,
// score-baseline, fuse, run, synth, selftest.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "skeltex/skeltex.hpp"

#ifndef SKELTEX_GOLDEN_DIR
#define SKELTEX_GOLDEN_DIR "tests/golden"
#endif

namespace fs = std::filesystem;
using namespace skeltex;

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  for (auto& f : csv::split(s))
    if (!f.empty()) out.push_back(f);
  return out;
}

ImageSize parse_size(const std::string& s) {
  const auto x = s.find('x');
  std::size_t h = 0, w = 0;
  if (x == std::string::npos) {
    if (!detail::parse_number(std::string_view(s), h)) throw ConfigError("bad --size '" + s + "'");
    w = h;
  } else if (!detail::parse_number(std::string_view(s).substr(0, x), h) ||
             !detail::parse_number(std::string_view(s).substr(x + 1), w)) {
    throw ConfigError("bad --size '" + s + "' (use N or HxW)");
  }
  return {h, w};
}

struct Common {
  std::string config_path;
  std::string size;
  std::string labels;
  unsigned jobs = 1;
};

PipelineConfig resolve_config(const Common& c) {
  PipelineConfig cfg = c.config_path.empty() ? PipelineConfig{} : load_config(c.config_path);
  if (!c.size.empty()) cfg.image_size = parse_size(c.size);
  if (!c.labels.empty()) cfg.labels = split_list(c.labels);
  validate(cfg);
  return cfg;
}

void print_summary(const SkeletonSequence& seq) {
  std::cout << "source: " << seq.source_id << "\nframes: " << seq.frame_count() << "\nbodies per frame:\n";
  for (const auto& [bodies, frames] : seq.bodies_per_frame())
    std::cout << "  " << bodies << " bod" << (bodies == 1 ? "y" : "ies") << ": " << frames << " frame(s)\n";
  const auto empty = seq.empty_frames();
  if (!empty.empty()) std::cout << "empty frames: " << empty.size() << '\n';
}

void write_feature_csv(std::ostream& out, const FeatureMatrix& m) {
  out << "row_id,family,strategy,subject";
  for (std::size_t t = 0; t < m.cols; ++t) {
    if (m.is_vector()) {
      out << ",f" << t << "_x,f" << t << "_y,f" << t << "_z";
    } else {
      out << ",f" << t;
    }
  }
  out << '\n';
  char buf[32];
  for (std::size_t r = 0; r < m.rows; ++r) {
    out << r << ',' << to_string(m.family) << ',' << to_string(m.strategy) << ',' << to_string(m.row_subjects[r]);
    for (std::size_t t = 0; t < m.cols; ++t)
      for (std::size_t c = 0; c < m.components(); ++c) {
        const auto res = std::to_chars(buf, buf + sizeof buf, m.at(r, t, c));
        out << ',' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf));
      }
    out << '\n';
  }
}

/// Sample table: columns sample_id, image, and (for training) class.
struct SampleRow {
  std::string sample_id;
  fs::path image;
  std::size_t label = 0;
};

std::vector<SampleRow> read_samples(const fs::path& path, bool need_class) {
  const auto t = csv::read(path);
  const std::size_t id_col = t.column("sample_id");
  const std::size_t img_col = t.column("image");
  std::vector<SampleRow> rows;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    SampleRow s;
    s.sample_id = t.rows[r][id_col];
    s.image = t.rows[r][img_col];
    if (s.image.is_relative()) s.image = path.parent_path() / s.image;
    if (need_class && !detail::parse_number(std::string_view(t.rows[r][t.column("class")]), s.label))
      throw ParseError(t.lines[r], "malformed class");
    rows.push_back(std::move(s));
  }
  return rows;
}

std::map<std::string, std::size_t> read_truth(const fs::path& path) {
  const auto t = csv::read(path);
  const std::size_t id_col = t.column("sample_id");
  const std::size_t cls_col = t.column("class");
  std::map<std::string, std::size_t> truth;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    std::size_t c = 0;
    if (!detail::parse_number(std::string_view(t.rows[r][cls_col]), c)) throw ParseError(t.lines[r], "malformed class");
    truth[t.rows[r][id_col]] = c;
  }
  return truth;
}

void add_common(CLI::App* cmd, Common& c, bool labels, bool jobs) {
  cmd->add_option("--config", c.config_path, "JSON configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--size", c.size, "image size, N or HxW");
  if (labels) cmd->add_option("--labels", c.labels, "comma-separated subset of the 13 image labels");
  if (jobs) cmd->add_option("--jobs", c.jobs, "sequences processed concurrently")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skeltex: skeleton sequences to spatial-feature texture images"};
  app.require_subcommand(0, 1);
  bool print_default = false;
  app.add_flag("--print-default-config", print_default, "print the default JSON configuration and exit");

  Common common;

  // parse
  std::string parse_in;
  auto* parse_cmd = app.add_subcommand("parse", "validate a skeleton file and print a summary");
  parse_cmd->add_option("file", parse_in)->required()->check(CLI::ExistingFile);

  // preprocess
  std::string pre_in, pre_out;
  auto* pre_cmd = app.add_subcommand("preprocess", "write the normalized two-subject sequence");
  pre_cmd->add_option("file", pre_in)->required()->check(CLI::ExistingFile);
  pre_cmd->add_option("--out", pre_out, "output skeleton file")->required();

  // extract
  std::string ex_in, ex_out, ex_family = "JJd", ex_strategy = "JS1", ex_subject = "main";
  auto* ex_cmd = app.add_subcommand("extract", "write one feature matrix as CSV");
  ex_cmd->add_option("file", ex_in)->required()->check(CLI::ExistingFile);
  ex_cmd->add_option("--family", ex_family, "JJd, JJv, JJo, JLd or LLa");
  ex_cmd->add_option("--strategy", ex_strategy, "JS1, JS2, JS3, LS1, LS2 or FULL");
  ex_cmd->add_option("--subject", ex_subject, "subject for LS1/LS2 plans: main or auxiliary");
  ex_cmd->add_option("--out", ex_out, "CSV path (stdout when omitted)");
  ex_cmd->add_option("--config", common.config_path)->check(CLI::ExistingFile);

  // encode / run
  std::vector<std::string> enc_inputs;
  std::string enc_out;
  auto* enc_cmd = app.add_subcommand("encode", "encode skeleton files into texture images");
  enc_cmd->add_option("inputs", enc_inputs)->required()->check(CLI::ExistingFile);
  enc_cmd->add_option("--out", enc_out, "output directory")->required();
  add_common(enc_cmd, common, true, true);

  std::vector<std::string> run_inputs;
  std::string run_out;
  bool run_synthetic = false;
  std::uint64_t run_seed = 0;
  bool run_seed_set = false;
  auto* run_cmd = app.add_subcommand("run", "full pipeline with manifest; --synthetic runs the desk-scale evaluation");
  run_cmd->add_option("inputs", run_inputs)->check(CLI::ExistingFile);
  run_cmd->add_option("--out", run_out, "output directory (default: config output_dir)");
  run_cmd->add_flag("--synthetic", run_synthetic, "generate the configured synthetic dataset and evaluate");
  run_cmd->add_option("--seed", run_seed, "synthetic dataset seed")->each([&](const std::string&) { run_seed_set = true; });
  add_common(run_cmd, common, true, true);

  // train-baseline / score-baseline
  std::string tr_samples, tr_label, tr_out;
  auto* tr_cmd = app.add_subcommand("train-baseline", "fit a nearest-centroid model on labelled images");
  tr_cmd->add_option("--samples", tr_samples, "CSV with sample_id,class,image")->required()->check(CLI::ExistingFile);
  tr_cmd->add_option("--label", tr_label, "image label the model is trained for")->required();
  tr_cmd->add_option("--out", tr_out, "model file")->required();

  std::string sc_model, sc_samples, sc_out;
  auto* sc_cmd = app.add_subcommand("score-baseline", "score images with a trained model (fusion CSV)");
  sc_cmd->add_option("--model", sc_model)->required()->check(CLI::ExistingFile);
  sc_cmd->add_option("--samples", sc_samples, "CSV with sample_id,image")->required()->check(CLI::ExistingFile);
  sc_cmd->add_option("--out", sc_out, "score CSV (stdout when omitted)");

  // fuse
  std::vector<std::string> fu_inputs;
  std::string fu_truth, fu_models, fu_out;
  bool fu_all = false;
  auto* fu_cmd = app.add_subcommand("fuse", "multiply per-model scores and predict");
  fu_cmd->add_option("scores", fu_inputs)->required()->check(CLI::ExistingFile);
  fu_cmd->add_option("--truth", fu_truth, "CSV with sample_id,class")->check(CLI::ExistingFile);
  fu_cmd->add_option("--models", fu_models, "comma-separated model labels to fuse");
  fu_cmd->add_flag("--all-models", fu_all, "fuse every model present in the score files");
  fu_cmd->add_option("--out", fu_out, "prediction CSV (stdout when omitted)");
  fu_cmd->add_option("--config", common.config_path)->check(CLI::ExistingFile);

  // synth
  int sy_class = 0;
  std::uint64_t sy_seed = 1;
  std::size_t sy_frames = 48;
  bool sy_partner = false;
  double sy_noise = 0.002;
  std::string sy_out;
  auto* sy_cmd = app.add_subcommand("synth", "write a synthetic skeleton file");
  sy_cmd->add_option("--class", sy_class, "motion class 0..5")->required();
  sy_cmd->add_option("--seed", sy_seed);
  sy_cmd->add_option("--frames", sy_frames);
  sy_cmd->add_option("--noise", sy_noise);
  sy_cmd->add_flag("--partner", sy_partner, "add a second person");
  sy_cmd->add_option("--out", sy_out)->required();

  // selftest
  std::string st_golden = SKELTEX_GOLDEN_DIR, st_write;
  auto* st_cmd = app.add_subcommand("selftest", "run the built-in verification suite");
  st_cmd->add_option("--golden", st_golden, "golden image directory");
  st_cmd->add_option("--write-golden", st_write, "regenerate golden images into this directory and exit");
  st_cmd->add_option("--config", common.config_path)->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (print_default) {
      std::cout << to_json(PipelineConfig{}).dump(2) << '\n';
      return 0;
    }
    if (parse_cmd->parsed()) {
      print_summary(parse_skeleton_file(parse_in));
      return 0;
    }
    if (pre_cmd->parsed()) {
      const auto ns = preprocess(parse_skeleton_file(pre_in));
      write_skeleton_file(pre_out, to_skeleton_sequence(ns));
      std::size_t shadow = 0;
      for (bool b : ns.shadow_frames) shadow += b;
      std::cout << "frames: " << ns.frame_count() << "\nshadow subject: " << (ns.shadow_flag ? "yes" : "no")
                << "\nshadow frames: " << shadow << '\n';
      return 0;
    }
    if (ex_cmd->parsed()) {
      const PipelineConfig cfg = resolve_config(common);
      auto plan = build_selection_plan(parse_family(ex_family), parse_strategy(ex_strategy), cfg.selection);
      if (ex_subject == "auxiliary") {
        plan = with_subject(std::move(plan), Subject::kAuxiliary);
      } else if (ex_subject != "main") {
        throw ConfigError("--subject must be main or auxiliary");
      }
      const auto m = extract_features(preprocess(parse_skeleton_file(ex_in)), plan);
      if (ex_out.empty()) {
        write_feature_csv(std::cout, m);
      } else {
        std::ofstream out(ex_out);
        write_feature_csv(out, m);
      }
      std::cerr << "rows: " << m.rows << ", frames: " << m.cols << '\n';
      return 0;
    }
    if (enc_cmd->parsed() || (run_cmd->parsed() && !run_synthetic)) {
      PipelineConfig cfg = resolve_config(common);
      const bool is_run = run_cmd->parsed();
      const fs::path out = is_run ? (run_out.empty() ? fs::path(cfg.output_dir) : fs::path(run_out)) : fs::path(enc_out);
      std::vector<fs::path> inputs;
      for (const auto& s : is_run ? run_inputs : enc_inputs) inputs.emplace_back(s);
      const auto report = run_pipeline(cfg, inputs, out, common.jobs, &std::cerr);
      std::size_t files = 0;
      for (const auto& s : report.sequences) files += s.outputs.size();
      std::cerr << report.sequences.size() << " sequence(s), " << files << " image(s) written to " << out.string()
                << '\n';
      return report.ok() ? 0 : 1;
    }
    if (run_cmd->parsed()) {
      PipelineConfig cfg = resolve_config(common);
      if (run_seed_set) cfg.synthetic.seed = run_seed;
      const auto start = std::chrono::steady_clock::now();
      const auto result = evaluate_synthetic(cfg, cfg.labels, cfg.fusion_models, common.jobs);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      std::cout << "train: " << result.train_count << ", test: " << result.test_count << '\n';
      for (const auto& label : cfg.labels)
        std::cout << "  " << label << ": " << result.accuracy.at(label) << '\n';
      std::cout << "fused (" << result.fused_labels.size() << " models): " << result.fused_accuracy << '\n'
                << "elapsed: " << secs << " s\n";
      if (!run_out.empty()) {
        fs::create_directories(run_out);
        std::ofstream scores(fs::path(run_out) / "test_scores.csv");
        write_score_csv(scores, result.test_scores);
      }
      return 0;
    }
    if (tr_cmd->parsed()) {
      std::vector<LabeledVector> set;
      for (const auto& s : read_samples(tr_samples, true)) set.push_back({featurize(read_png(s.image)), s.label});
      const auto model = train(set, tr_label);
      save_model_file(tr_out, model);
      std::cout << "classes: " << model.class_count << ", samples: " << set.size() << ", tau: " << model.tau << '\n';
      return 0;
    }
    if (sc_cmd->parsed()) {
      const auto model = load_model_file(sc_model);
      std::vector<ScoreRecord> recs;
      for (const auto& s : read_samples(sc_samples, false))
        recs.push_back({s.sample_id, score(model, featurize(read_png(s.image)))});
      if (sc_out.empty()) {
        write_score_csv(std::cout, recs);
      } else {
        std::ofstream out(sc_out);
        write_score_csv(out, recs);
      }
      return 0;
    }
    if (fu_cmd->parsed()) {
      std::vector<ScoreRecord> recs;
      for (const auto& p : fu_inputs) {
        auto r = read_score_csv(p);
        recs.insert(recs.end(), r.begin(), r.end());
      }
      std::vector<std::string> models;
      if (!fu_all) {
        models = fu_models.empty() ? resolve_config(common).fusion_models : split_list(fu_models);
        std::set<std::string> present;
        for (const auto& r : recs) present.insert(r.vector.model_label);
        std::erase_if(models, [&](const std::string& m) { return !present.count(m); });
        if (models.empty()) throw ContractError("none of the selected models appear in the score files");
      }
      const auto preds = fuse_samples(recs, models);
      std::ostringstream table;
      table << "sample_id,predicted\n";
      for (const auto& p : preds) table << p.sample_id << ',' << p.predicted << '\n';
      if (fu_out.empty()) {
        std::cout << table.str();
      } else {
        std::ofstream(fu_out) << table.str();
      }
      if (!fu_truth.empty()) std::cerr << "accuracy: " << accuracy(preds, read_truth(fu_truth)) << '\n';
      return 0;
    }
    if (sy_cmd->parsed()) {
      SynthOptions opts;
      opts.noise = sy_noise;
      opts.with_partner = sy_partner;
      write_skeleton_file(sy_out, synthesize_sequence(sy_class, sy_seed, sy_frames, opts));
      return 0;
    }
    if (st_cmd->parsed()) {
      if (!st_write.empty()) {
        for (const auto& p : write_golden_images(st_write)) std::cout << p.string() << '\n';
        return 0;
      }
      const auto report = run_selftest(resolve_config(common), st_golden);
      for (const auto& c : report.checks)
        std::cout << (c.passed ? "PASS  " : "FAIL  ") << c.name << (c.detail.empty() ? "" : "  [" + c.detail + "]")
                  << '\n';
      std::cout << (report.passed() ? "all checks passed" : "some checks FAILED") << '\n';
      return report.passed() ? 0 : 1;
    }
    std::cout << app.help();
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
