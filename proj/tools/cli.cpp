#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "r2d2/checkpoint.hpp"
#include "r2d2/dcf.hpp"
#include "r2d2/engine.hpp"
#include "r2d2/error.hpp"
#include "r2d2/evaluation.hpp"
#include "r2d2/fft.hpp"
#include "r2d2/io.hpp"
#include "r2d2/metrics.hpp"
#include "r2d2/nufft.hpp"
#include "r2d2/phantom.hpp"
#include "r2d2/residual.hpp"
#include "r2d2/sim.hpp"
#include "r2d2/training.hpp"
#include "r2d2/version.hpp"

namespace r2d2::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

std::string config_key(const std::string& flag) {
  std::string key = flag;
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

template <class T>
void assign(T& target, const json& value) {
  target = value.get<T>();
}

// Lists may be given in a config file either as arrays or as strings.
template <>
void assign<std::string>(std::string& target, const json& value) {
  if (!value.is_array()) {
    target = value.get<std::string>();
    return;
  }
  std::string joined;
  for (const auto& item : value) {
    if (!joined.empty()) joined += ',';
    joined += item.is_string() ? item.get<std::string>() : item.dump();
  }
  target = joined;
}

// Per-subcommand options that can come from flags or from a --config JSON
// document. Flags take precedence; unknown config fields are rejected.
class Options {
 public:
  Options(CLI::App* app, std::string command) : app_(app), command_(std::move(command)) {
    app_->add_option("--config", config_path_, "JSON run configuration (flags override its fields)");
  }

  template <class T>
  CLI::Option* add(const std::string& name, T& target, const std::string& help) {
    CLI::Option* opt = app_->add_option("--" + name, target, help);
    entries_.push_back({name, opt, [&target](const json& v) { assign(target, v); }, false});
    return opt;
  }

  void resolve() {
    if (config_path_.empty()) return;
    std::ifstream in(config_path_);
    if (!in) throw InvalidArgument("cannot open config " + config_path_);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw InvalidArgument("config: " + std::string(e.what()));
    }
    if (!doc.is_object()) throw InvalidArgument("config: top level must be an object");
    if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer() ||
        doc["schema_version"].get<int>() != kSchemaVersion) {
      throw InvalidArgument("config: schema_version must be " + std::to_string(kSchemaVersion));
    }
    if (doc.contains("command") && doc["command"] != command_) {
      throw InvalidArgument("config: written for command '" + doc["command"].dump() + "', not " + command_);
    }
    for (const auto& [key, value] : doc.items()) {
      if (key == "schema_version" || key == "command") continue;
      auto it = std::find_if(entries_.begin(), entries_.end(),
                             [&](const Entry& e) { return config_key(e.name) == key; });
      if (it == entries_.end()) throw InvalidArgument("config: unknown field '" + key + "'");
      if (it->option->count() > 0) continue;
      try {
        it->set(value);
      } catch (const json::exception&) {
        throw InvalidArgument("config: field '" + key + "' has the wrong type");
      }
      it->from_config = true;
    }
  }

  bool given(const std::string& name) const {
    for (const auto& e : entries_) {
      if (e.name == name) return e.option->count() > 0 || e.from_config;
    }
    return false;
  }

  void require(std::initializer_list<const char*> names) const {
    for (const char* n : names) {
      if (!given(n)) throw InvalidArgument(command_ + ": missing required option --" + std::string(n));
    }
  }

 private:
  struct Entry {
    std::string name;
    CLI::Option* option;
    std::function<void(const json&)> set;
    bool from_config;
  };

  CLI::App* app_;
  std::string command_;
  std::string config_path_;
  std::vector<Entry> entries_;
};

// "10,20,...,80" expands the ellipsis with the step of the two preceding values.
std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::string> tokens;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    tokens.push_back(tok);
  }
  std::vector<std::size_t> values;
  bool pending_range = false;
  for (const auto& tok : tokens) {
    if (tok == "...") {
      if (values.size() < 2 || pending_range) throw InvalidArgument("list: '...' needs two leading values");
      pending_range = true;
      continue;
    }
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("list: bad entry '" + tok + "'");
    }
    if (used != tok.size() || v <= 0) throw InvalidArgument("list: bad entry '" + tok + "'");
    const auto value = static_cast<std::size_t>(v);
    if (pending_range) {
      const std::size_t a = values[values.size() - 2];
      const std::size_t b = values.back();
      if (b <= a || (value - b) % (b - a) != 0 || value <= b) {
        throw InvalidArgument("list: range end does not match step");
      }
      for (std::size_t x = b + (b - a); x < value; x += b - a) values.push_back(x);
      pending_range = false;
    }
    values.push_back(value);
  }
  if (pending_range) throw InvalidArgument("list: '...' needs a final value");
  if (values.empty()) throw InvalidArgument("list: empty");
  return values;
}

NufftPlan weighted_plan(const std::string& traj_path, std::size_t size, const std::string& weights_path,
                        int iterations) {
  const NufftPlan plan(read_trajectory_csv(traj_path), size, size);
  if (!weights_path.empty()) return attach_weights(plan, read_weights_csv(weights_path));
  return attach_weights(plan, pipe_menon(plan, iterations));
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void write_json(const std::string& path, const json& doc) {
  std::ofstream out(path);
  require_data(static_cast<bool>(out), "cannot write " + path);
  out << doc.dump(2) << "\n";
}

ModelSeries series_from(const std::string& dir, double gamma, std::size_t iterations,
                        const std::string& dc) {
  if (!dir.empty()) {
    ModelSeries s = load_series(dir);
    if (!dc.empty() && parse_dc_mode(dc) != s.dc_mode) {
      throw InvalidArgument("series was trained with dc mode " + std::string(to_string(s.dc_mode)));
    }
    return s;
  }
  require(gamma > 0.0, "either --series or --gradient-step is required");
  return gradient_step_series(gamma, iterations, dc.empty() ? DcMode::Exact : parse_dc_mode(dc));
}

struct Io {
  std::ostream& out;
  std::ostream& err;
};

// Each subcommand registers its options and returns the action to run.
using Action = std::function<void(Io)>;

Action add_traj(CLI::App& app) {
  auto* sub = app.add_subcommand("traj", "Write a golden-angle radial trajectory as CSV");
  struct State {
    std::size_t spokes = 0, radius = 0;
    std::string out;
  };
  auto s = std::make_shared<State>();
  auto o = std::make_shared<Options>(sub, "traj");
  o->add("spokes", s->spokes, "Number of spokes");
  o->add("radius", s->radius, "Samples per half spoke R (2R+1 per spoke)");
  o->add("out", s->out, "Output CSV");
  return [s, o](Io io) {
    o->resolve();
    o->require({"spokes", "radius", "out"});
    const Trajectory t = radial_trajectory(s->spokes, s->radius);
    write_trajectory_csv(s->out, t);
    io.out << "wrote " << t.size() << " points to " << s->out << "\n";
  };
}

Action add_phantom(CLI::App& app) {
  auto* sub = app.add_subcommand("phantom", "Write a Shepp-Logan or random-ellipse ground truth");
  struct State {
    std::string kind = "shepp-logan", out;
    std::size_t size = 32;
    std::uint64_t seed = 0;
  };
  auto s = std::make_shared<State>();
  auto o = std::make_shared<Options>(sub, "phantom");
  o->add("kind", s->kind, "shepp-logan or ellipses");
  o->add("size", s->size, "Image side length");
  o->add("seed", s->seed, "Seed for random ellipses");
  o->add("out", s->out, "Output .r2d2img");
  return [s, o](Io io) {
    o->resolve();
    o->require({"out"});
    PhantomSpec spec{.size = s->size, .seed = s->seed};
    if (s->kind == "ellipses") {
      spec.kind = PhantomKind::RandomEllipses;
    } else if (s->kind != "shepp-logan") {
      throw InvalidArgument("phantom: unknown kind '" + s->kind + "'");
    }
    write_image(s->out, make_phantom(spec));
    io.out << "wrote " << s->size << "x" << s->size << " phantom to " << s->out << "\n";
  };
}

Action add_dcf(CLI::App& app) {
  auto* sub = app.add_subcommand("dcf", "Compute Pipe-Menon density compensation weights");
  struct State {
    std::string traj, out;
    std::size_t size = 0;
    int iters = kPipeMenonIterations;
  };
  auto s = std::make_shared<State>();
  auto o = std::make_shared<Options>(sub, "dcf");
  o->add("traj", s->traj, "Trajectory CSV");
  o->add("size", s->size, "Image side length");
  o->add("iters", s->iters, "Pipe-Menon iterations");
  o->add("out", s->out, "Output weights CSV");
  return [s, o](Io io) {
    o->resolve();
    o->require({"traj", "size", "out"});
    const NufftPlan plan(read_trajectory_csv(s->traj), s->size, s->size);
    const DcWeights w = pipe_menon(plan, s->iters);
    write_weights_csv(s->out, w.d);
    const auto [lo, hi] = std::minmax_element(w.d.begin(), w.d.end());
    io.out << "wrote " << w.d.size() << " weights (max/min " << *hi / *lo << ") to " << s->out << "\n";
  };
}

Action add_psf(CLI::App& app) {
  auto* sub = app.add_subcommand("psf", "Compute the normalized point spread function");
  struct State {
    std::string traj, weights, out;
    std::size_t size = 0;
    int iters = kPipeMenonIterations;
  };
  auto s = std::make_shared<State>();
  auto o = std::make_shared<Options>(sub, "psf");
  o->add("traj", s->traj, "Trajectory CSV");
  o->add("size", s->size, "Image side length");
  o->add("weights", s->weights, "Weights CSV (default: Pipe-Menon)");
  o->add("iters", s->iters, "Pipe-Menon iterations when no weights are given");
  o->add("out", s->out, "Output .r2d2img");
  return [s, o](Io io) {
    o->resolve();
    o->require({"traj", "size", "out"});
    const NufftPlan plan = weighted_plan(s->traj, s->size, s->weights, s->iters);
    const Image h = compute_psf(plan);
    write_image(s->out, h);
    io.out << "kappa " << plan.kappa() << ", peak " << max_value(h) << "\n";
  };
}

Action add_simulate(CLI::App& app) {
  auto* sub = app.add_subcommand("simulate", "Simulate noisy radial measurements of an image");
  struct State {
    std::string gt, traj, out;
    std::size_t spokes = 0, radius = 0;
    double dr = 0.0;
    std::uint64_t seed = 0, stream = 0;
    int iters = kPipeMenonIterations;
  };
  auto s = std::make_shared<State>();
  auto o = std::make_shared<Options>(sub, "simulate");
  o->add("gt", s->gt, "Ground-truth .r2d2img (intensities in [0, 1])");
  o->add("spokes", s->spokes, "Number of spokes (ignored with --traj)");
  o->add("radius", s->radius, "Spoke radius R (default: image side)");
  o->add("traj", s->traj, "Trajectory CSV instead of --spokes/--radius");
  o->add("dr", s->dr, "Dynamic range in [10, 1e4]");
  o->add("seed", s->seed, "Noise seed");
  o->add("stream", s->stream, "Noise stream");
  o->add("iters", s->iters, "Pipe-Menon iterations");
  o->add("out", s->out, "Output .r2d2cplx (a .json sidecar is written next to it)");
  return [s, o](Io io) {
    o->resolve();
    o->require({"gt", "dr", "out"});
    const Image gt = read_image(s->gt);
    require_data(gt.height() == gt.width(), "simulate: ground truth must be square");
    Trajectory t;
    if (!s->traj.empty()) {
      t = read_trajectory_csv(s->traj);
    } else {
      o->require({"spokes"});
      t = radial_trajectory(s->spokes, s->radius == 0 ? gt.height() : s->radius);
    }
    const NufftPlan raw(t, gt.height(), gt.width());
    const NufftPlan plan = attach_weights(raw, pipe_menon(raw, s->iters));
    Rng rng(s->seed, s->stream);
    const MeasurementSet set = simulate(plan, gt, s->dr, rng);
    write_measurement(s->out, set, t.radius, gt.height());
    io.out << "wrote " << set.y.size() << " samples to " << s->out << " (tau " << set.tau << ")\n";
  };
}

Action add_reconstruct(CLI::App& app) {
  auto* sub = app.add_subcommand("reconstruct", "Run an R2D2 series on measurements");
  struct State {
    std::string series, meas, traj, dc, weights, out, trace, gt;
    double gamma = 0.0, dr = 0.0;
    std::size_t iterations = 10, size = 0;
    int iters = kPipeMenonIterations;
  };
  auto s = std::make_shared<State>();
  auto o = std::make_shared<Options>(sub, "reconstruct");
  o->add("series", s->series, "Series directory written by train");
  o->add("gradient-step", s->gamma, "Use a gamma * r gradient-step series instead of --series");
  o->add("iterations", s->iterations, "Series length for --gradient-step");
  o->add("meas", s->meas, "Measurements .r2d2cplx");
  o->add("traj", s->traj, "Trajectory CSV");
  o->add("size", s->size, "Image side length (default: from the measurement sidecar)");
  o->add("weights", s->weights, "Weights CSV (default: Pipe-Menon)");
  o->add("iters", s->iters, "Pipe-Menon iterations when no weights are given");
  o->add("dc", s->dc, "Data-consistency mode: exact or fft (default: the series' mode)");
  o->add("out", s->out, "Output .r2d2img");
  o->add("trace", s->trace, "Per-iteration trace JSON");
  o->add("gt", s->gt, "Ground truth for SNR in the trace");
  o->add("dr", s->dr, "logSNR parameter a (default: DR from the sidecar)");
  return [s, o](Io io) {
    o->resolve();
    o->require({"meas", "traj", "out"});
    const MeasurementFile meas = read_measurement(s->meas);
    std::size_t size = s->size;
    if (size == 0 && meas.has_sidecar) size = meas.image_size;
    require(size > 0, "reconstruct: --size is required without a measurement sidecar");
    const ModelSeries series = series_from(s->series, s->gamma, s->iterations, s->dc);
    const NufftPlan plan = weighted_plan(s->traj, size, s->weights, s->iters);
    const DataConsistency dc = DataConsistency::make(series.dc_mode, plan);
    const Image x_d = back_project(plan, meas.set.y);
    const Reconstruction rec = reconstruct(series, x_d, dc);
    write_image(s->out, rec.estimate);

    json trace;
    trace["dc_mode"] = to_string(series.dc_mode);
    trace["iterations"] = series.size();
    trace["alphas"] = rec.trace.alphas;
    trace["residual_norms"] = rec.trace.residual_norms;
    std::string summary;
    if (!s->gt.empty()) {
      const Image gt = read_image(s->gt);
      const double a = s->dr > 0.0 ? s->dr : meas.set.dr;
      json snrs = json::array(), logs = json::array();
      for (std::size_t i = 1; i < rec.trace.iterates.size(); ++i) {
        snrs.push_back(finite_or_null(snr(rec.trace.iterates[i], gt)));
        if (a > 0.0) logs.push_back(finite_or_null(logsnr(rec.trace.iterates[i], gt, a).db));
      }
      trace["snr_db"] = snrs;
      if (a > 0.0) trace["logsnr_db"] = logs;
      summary = ", SNR " + std::to_string(snr(rec.estimate, gt)) + " dB";
    }
    if (!s->trace.empty()) write_json(s->trace, trace);
    io.out << "reconstructed " << size << "x" << size << " image with " << series.size() << " iterations"
           << summary << "\n";
  };
}

Action add_evaluate(CLI::App& app) {
  auto* sub = app.add_subcommand("evaluate", "SNR and logSNR of a reconstruction");
  struct State {
    std::string recon, gt, json_path;
    double dr = 0.0;
  };
  auto s = std::make_shared<State>();
  auto o = std::make_shared<Options>(sub, "evaluate");
  o->add("recon", s->recon, "Reconstruction .r2d2img");
  o->add("gt", s->gt, "Ground truth .r2d2img");
  o->add("dr", s->dr, "logSNR parameter a (the dynamic range)");
  o->add("json", s->json_path, "Output JSON");
  return [s, o](Io io) {
    o->resolve();
    o->require({"recon", "gt", "dr"});
    const Image x = read_image(s->recon);
    const Image gt = read_image(s->gt);
    const double v = snr(x, gt);
    const LogSnr l = logsnr(x, gt, s->dr);
    json doc;
    doc["snr_db"] = finite_or_null(v);
    doc["logsnr_db"] = finite_or_null(l.db);
    doc["logsnr_clamped"] = l.clamped;
    doc["dr"] = s->dr;
    if (!s->json_path.empty()) write_json(s->json_path, doc);
    io.out << "snr_db " << v << "\nlogsnr_db " << l.db << "\n";
  };
}

Action add_train(CLI::App& app) {
  auto* sub = app.add_subcommand("train", "Train an R2D2 series on synthetic phantoms");
  struct State {
    TrainConfig cfg;
    std::string dc = "exact", out;
    bool quiet = false;
  };
  auto s = std::make_shared<State>();
  auto o = std::make_shared<Options>(sub, "train");
  TrainConfig& c = s->cfg;
  o->add("size", c.image_size, "Image side length");
  o->add("radius", c.radius, "Spoke radius R (0: image side)");
  o->add("samples", c.samples, "Training samples K");
  o->add("validation-samples", c.validation_samples, "Held-out validation samples");
  o->add("min-spokes", c.min_spokes, "Smallest spoke count");
  o->add("max-spokes", c.max_spokes, "Largest spoke count");
  o->add("min-dr", c.min_dr, "Smallest dynamic range");
  o->add("max-dr", c.max_dr, "Largest dynamic range");
  o->add("stages", c.stages, "Series length I");
  o->add("epochs", c.epochs, "Epochs per stage");
  o->add("batch-size", c.batch_size, "Mini-batch size");
  o->add("lr", c.learning_rate, "Adam learning rate");
  o->add("seed", c.seed, "Master seed");
  o->add("dc", s->dc, "Data-consistency mode: exact or fft");
  o->add("depth", c.network.depth, "U-Net depth");
  o->add("base-channels", c.network.base_channels, "U-Net channels at the first level");
  o->add("dcf-iters", c.dcf_iterations, "Pipe-Menon iterations");
  o->add("out", s->out, "Output series directory");
  sub->add_flag("--quiet", s->quiet, "Suppress progress output");
  return [s, o](Io io) {
    o->resolve();
    o->require({"out"});
    s->cfg.dc_mode = parse_dc_mode(s->dc);
    TrainLogger log;
    if (!s->quiet) log = [&io](const std::string& m) { io.err << m << std::endl; };
    const TrainResult r = train_series(s->cfg, random_ellipse_source(s->cfg.seed, s->cfg.image_size), log);
    std::vector<std::vector<double>> losses;
    json report;
    report["validation_mean_snr_backprojection"] = r.validation_mean_snr_backprojection;
    json stages = json::array();
    for (const auto& st : r.stages) {
      losses.push_back(st.epoch_losses);
      json j;
      j["stage"] = st.stage;
      j["initial_loss"] = st.initial_loss;
      j["epoch_losses"] = st.epoch_losses;
      j["train_mean_snr"] = st.train_mean_snr;
      j["validation_mean_snr"] = st.validation_mean_snr;
      j["validation_mean_logsnr"] = st.validation_mean_logsnr;
      stages.push_back(j);
    }
    report["stages"] = stages;
    save_series(s->out, r.series, losses);
    write_json((std::filesystem::path(s->out) / "train_report.json").string(), report);
    io.out << "wrote " << r.series.size() << "-stage series to " << s->out << "\n";
  };
}

Action add_bench(CLI::App& app) {
  auto* sub = app.add_subcommand("bench", "Evaluate a series on the spoke-count sweep");
  struct State {
    std::string series, dc, sizes = "32", spokes = "10,20,...,80", out, report;
    double gamma = 0.0, dr = 0.0;
    std::size_t iterations = 10, problems = 20, threads = 1;
    std::uint64_t seed = 7;
    int iters = kPipeMenonIterations;
  };
  auto s = std::make_shared<State>();
  auto o = std::make_shared<Options>(sub, "bench");
  o->add("series", s->series, "Series directory written by train");
  o->add("gradient-step", s->gamma, "Use a gamma * r gradient-step series instead of --series");
  o->add("iterations", s->iterations, "Series length for --gradient-step");
  o->add("dc", s->dc, "Data-consistency mode for --gradient-step");
  o->add("sizes", s->sizes, "Comma-separated image sizes");
  o->add("spokes", s->spokes, "Comma-separated spoke counts; 'a,b,...,z' expands a range");
  o->add("problems-per-spoke", s->problems, "Ground truths per spoke count");
  o->add("seed", s->seed, "Master seed");
  o->add("dr", s->dr, "Fixed dynamic range (default: log-uniform per ground truth)");
  o->add("threads", s->threads, "Worker threads");
  o->add("iters", s->iters, "Pipe-Menon iterations");
  o->add("out", s->out, "Output CSV (default: stdout)");
  o->add("report", s->report, "Per-problem JSON report");
  return [s, o](Io io) {
    o->resolve();
    const ModelSeries series = series_from(s->series, s->gamma, s->iterations, s->dc);
    std::string csv;
    json problems = json::array();
    for (const std::size_t size : parse_list(s->sizes)) {
      BenchConfig cfg;
      cfg.image_size = size;
      cfg.spokes = parse_list(s->spokes);
      cfg.problems_per_spoke = s->problems;
      cfg.seed = s->seed;
      if (s->dr > 0.0) cfg.fixed_dr = s->dr;
      cfg.threads = s->threads;
      cfg.dcf_iterations = s->iters;
      const EvalReport rep = run_benchmark(series, cfg, random_ellipse_source(s->seed, size));
      const std::string part = rep.to_csv();
      csv += csv.empty() ? part : part.substr(part.find('\n') + 1);
      for (const auto& p : rep.problems) {
        json j;
        j["size"] = size;
        j["gt_index"] = p.gt_index;
        j["n_spokes"] = p.n_spokes;
        j["af"] = p.af;
        j["dr"] = p.dr;
        j["snr_db"] = finite_or_null(p.snr_db);
        j["logsnr_db"] = finite_or_null(p.logsnr_db);
        j["trace_snr"] = p.trace_snr;
        problems.push_back(j);
      }
    }
    if (!s->report.empty()) write_json(s->report, problems);
    if (s->out.empty()) {
      io.out << csv;
    } else {
      std::ofstream f(s->out, std::ios::binary);
      require_data(static_cast<bool>(f), "cannot write " + s->out);
      f << csv;
    }
  };
}

std::string version_text() {
  std::ostringstream v;
  v << "r2d2 " << kVersion << " (config schema " << kSchemaVersion << "; " << fft_backend_version()
    << "; nlohmann_json " << NLOHMANN_JSON_VERSION_MAJOR << "." << NLOHMANN_JSON_VERSION_MINOR << "."
    << NLOHMANN_JSON_VERSION_PATCH << ")";
  return v.str();
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
      return kExitUsage;
    case ErrorKind::Data:
      return kExitData;
    case ErrorKind::Numerical:
      return kExitNumerical;
  }
  return kExitData;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"R2D2 residual-series reconstruction for radial MRI", "r2d2"};
  app.set_version_flag("--version", version_text());
  app.require_subcommand(1);
  std::vector<std::pair<CLI::App*, Action>> actions;
  const auto reg = [&](Action (*add)(CLI::App&)) {
    Action a = add(app);
    actions.emplace_back(app.get_subcommands([](CLI::App*) { return true; }).back(), std::move(a));
  };
  reg(add_traj);
  reg(add_phantom);
  reg(add_dcf);
  reg(add_psf);
  reg(add_simulate);
  reg(add_reconstruct);
  reg(add_evaluate);
  reg(add_train);
  reg(add_bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);  // --help, --version
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const auto it = std::find_if(actions.begin(), actions.end(), [&](const auto& a) { return a.first == chosen; });
  try {
    it->second(Io{out, err});
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (e.kind() == ErrorKind::InvalidArgument) err << "\n" << chosen->help();
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}

}  // namespace r2d2::cli
