#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gfr/fractional.hpp"
#include "gfr/image_pt.hpp"
#include "gfr/io/csv.hpp"
#include "gfr/io/pgm.hpp"
#include "gfr/io/wav.hpp"
#include "gfr/phase_transform.hpp"
#include "gfr/spectral.hpp"
#include "gfr/synthesis.hpp"
#include "gfr/wavelet.hpp"

#ifndef GFR_VERSION
#define GFR_VERSION "0.0.0"
#endif

namespace gfr::cli {

namespace fs = std::filesystem;
using io::format_double;

namespace {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// small parsing helpers

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

bool is_wav(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".wav";
}

bool is_pgm(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".pgm";
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_angle(item));
    } catch (const InvalidArgument&) {
      throw InvalidArgument(std::string(what) + ": not a number: '" + trim(item) + "'");
    }
  }
  if (out.empty()) throw InvalidArgument(std::string(what) + ": empty list");
  return out;
}

// ---------------------------------------------------------------------------
// output header and paths

class Header {
 public:
  explicit Header(const std::string& command) {
    lines_.push_back(std::string("gfr ") + version());
    lines_.push_back("command: " + command);
  }
  void add(const std::string& key, const std::string& value) { lines_.push_back(key + ": " + value); }
  void add(const std::string& key, double value) { add(key, format_double(value)); }
  void add(const std::string& key, int value) { add(key, std::to_string(value)); }
  void add(const std::string& key, std::size_t value) { add(key, std::to_string(value)); }
  const std::vector<std::string>& lines() const { return lines_; }
  std::string joined() const {
    std::string s;
    for (const auto& l : lines_) s += (s.empty() ? "" : " | ") + l;
    return s;
  }

 private:
  std::vector<std::string> lines_;
};

fs::path default_output_dir() {
  const char* env = std::getenv(kOutputDirEnv);
  return env != nullptr && *env != '\0' ? fs::path(env) : fs::path(".");
}

void ensure_parent(const fs::path& p) {
  const fs::path parent = p.parent_path();
  if (parent.empty()) return;
  std::error_code ec;
  fs::create_directories(parent, ec);
  if (ec) throw io::IoError("cannot create directory " + parent.string() + ": " + ec.message());
}

fs::path resolve_output(const std::string& explicit_path, const std::string& input, const std::string& suffix,
                        const std::string& ext) {
  fs::path p = explicit_path.empty()
                   ? default_output_dir() / (fs::path(input).stem().string() + "_" + suffix + ext)
                   : fs::path(explicit_path);
  ensure_parent(p);
  return p;
}

// ---------------------------------------------------------------------------
// 1D input and output

struct Series {
  std::vector<double> t;
  Signal signal;
};

Series load_series(const std::string& path, std::optional<double> fs_override) {
  if (is_wav(path)) {
    io::WavData w = io::read_wav(path);
    const double rate = fs_override.value_or(w.sample_rate);
    std::vector<double> t(w.samples.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(i) / rate;
    return {std::move(t), Signal(std::move(w.samples), rate)};
  }
  io::TimeSeries ts = io::read_time_series_csv(path);
  const double rate = fs_override.value_or(ts.sample_rate);
  return {std::move(ts.t), Signal(std::move(ts.values), rate)};
}

struct SeriesOutput {
  std::string path;
  std::string wav_encoding = "float32";
};

/// Writes t, original and result columns as CSV, or the single result column as WAV.
void write_series(const SeriesOutput& target, const fs::path& path, const Header& header, const Series& in,
                  const std::vector<std::pair<std::string, std::vector<double>>>& results) {
  if (is_wav(path)) {
    if (results.size() != 1) throw InvalidArgument("WAV output holds a single result column; use CSV for sweeps");
    io::WavData w;
    w.samples = results.front().second;
    w.sample_rate = in.signal.sample_rate();
    w.encoding = target.wav_encoding == "pcm16" ? io::WavEncoding::pcm16 : io::WavEncoding::float32;
    w.comment = header.joined();
    io::write_wav(path, w);
    return;
  }
  io::CsvTable table;
  table.comments = header.lines();
  table.add_column("t", in.t);
  table.add_column("original", std::vector<double>(in.signal.samples().begin(), in.signal.samples().end()));
  for (const auto& [name, values] : results) table.add_column(name, values);
  io::write_csv(path, table);
}

std::vector<double> samples_of(const Signal& s) { return {s.samples().begin(), s.samples().end()}; }

std::string column_name(const std::string& prefix, double v) { return prefix + "=" + format_double(v); }

EdgeBinConvention parse_edge(const std::string& s) {
  return s == "rotation" ? EdgeBinConvention::complex_rotation : EdgeBinConvention::cosine;
}

std::vector<double> read_value_file(const std::string& path) {
  const Image g = io::read_grid_csv(path);
  return g.data;
}

// Interior least-squares phase phi of A cos(w n - phi).
double fitted_phase(std::span<const double> y, double w) {
  const auto r = interior_range(y.size());
  double c = 0.0;
  double s = 0.0;
  for (std::size_t i = r.begin; i < r.end; ++i) {
    c += y[i] * std::cos(w * static_cast<double>(i));
    s += y[i] * std::sin(w * static_cast<double>(i));
  }
  return std::atan2(s, c);
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double interior_rel_l2(std::span<const double> a, std::span<const double> b) {
  const auto r = interior_range(a.size());
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = r.begin; i < r.end; ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

// z(t) from the wavelet transform plus its alpha = 0 residual, shared by single and sweep runs.
struct WaveletAnalysis {
  std::vector<cplx> z;
  double residual = 0.0;
  std::size_t scales = 0;
  std::size_t aliased = 0;
};

WaveletAnalysis analyze(const Signal& x, const ScaleGrid& grid, const WaveletSpec& spec) {
  const Scalogram w = awt(x, grid, spec);
  WaveletAnalysis a{reconstruct_analytic(w), 0.0, grid.scales.size(), w.aliased_count()};
  std::vector<double> re(a.z.size());
  for (std::size_t i = 0; i < re.size(); ++i) re[i] = a.z[i].real();
  a.residual = interior_rel_l2(re, x.samples());
  return a;
}

std::vector<double> rotated_real(const std::vector<cplx>& z, double alpha) {
  const cplx r = std::polar(1.0, -alpha);
  std::vector<double> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = (z[i] * r).real();
  if (!all_finite(out)) throw NumericError("wpt: non-finite output");
  return out;
}

// ---------------------------------------------------------------------------
// command options

struct Common {
  std::string input;
  std::string output;
  std::optional<double> fs;
  std::string wav_encoding = "float32";
};

void add_common(CLI::App* cmd, Common& c, bool with_input = true) {
  if (with_input) cmd->add_option("input", c.input, "Input file: CSV (t,value) or mono WAV")->required();
  cmd->add_option("-o,--output", c.output, "Output file (.csv, or .wav for a single result column)");
  cmd->add_option("--fs", c.fs, "Override the input sample rate (Hz)")->check(CLI::PositiveNumber);
  cmd->add_option("--wav-encoding", c.wav_encoding, "Encoding for WAV output")
      ->check(CLI::IsMember({"float32", "pcm16"}));
}

struct PtOptions {
  Common common;
  std::string alpha;
  std::string alpha_per_bin;
  std::string alpha_sweep;
  std::string basis = "dft";
  std::string edge = "cosine";
};

struct DelayOptions {
  Common common;
  double samples = 0.0;
  std::string basis = "dft";
  std::string truth;
};

struct DifferintOptions {
  Common common;
  double order = 0.0;
  std::string scaling = "physical";
  bool no_dc_term = false;
};

struct WptOptions {
  Common common;
  std::string alpha;
  std::string alpha_sweep;
  double beta = 20.0;
  double gamma = 3.0;
  int voices = 10;
  double min_period = 2.0;
  std::optional<double> max_period;
};

struct ImageOptions {
  std::string input;
  std::string output;
  std::string alpha;
  std::string line = "cosine";
  std::string preview;
  bool quadrature_only = false;
};

struct SynthOptions {
  Common common;
  int case_number = 1;
  double duration = 1.0;
  double rate = 1000.0;
  double f0 = 1.0;
  double a0 = 0.0;
  std::string amplitudes = "1";
  std::string phases;
  std::optional<std::size_t> harmonics;
  double carrier_level = 1.0;
  double message_amplitude = 0.5;
  double message_frequency = 0.1;
};

struct ReproOptions {
  int example = 1;
  std::string outdir;
};

// ---------------------------------------------------------------------------
// commands

int cmd_pt(const PtOptions& o, std::ostream& out, std::ostream& err) {
  const int modes = !o.alpha.empty() + !o.alpha_per_bin.empty() + !o.alpha_sweep.empty();
  if (modes != 1) throw InvalidArgument("pt: give exactly one of --alpha, --alpha-per-bin, --alpha-sweep");
  const Series in = load_series(o.common.input, o.common.fs);
  const EdgeBinConvention edge = parse_edge(o.edge);
  const bool dct = o.basis == "dct";
  if (dct && edge == EdgeBinConvention::complex_rotation) {
    err << "warning: --edge applies to the dft basis only; ignored\n";
  }

  Header h("pt");
  h.add("input", o.common.input);
  h.add("sample_rate", in.signal.sample_rate());
  h.add("basis", o.basis);
  if (!dct) h.add("edge", to_string(edge));

  std::vector<std::pair<std::string, std::vector<double>>> results;
  if (!o.alpha.empty()) {
    const double a = parse_angle(o.alpha);
    h.add("alpha", a);
    const Signal y = dct ? pt_dct(in.signal, PhaseProfile::constant(a)) : pt_dft(in.signal, PhaseProfile::constant(a), edge);
    results.emplace_back("transformed", samples_of(y));
  } else if (!o.alpha_per_bin.empty()) {
    std::vector<double> alphas = read_value_file(o.alpha_per_bin);
    h.add("alpha_per_bin", o.alpha_per_bin);
    h.add("alpha_bins", alphas.size());
    const PhaseProfile p = PhaseProfile::per_bin(std::move(alphas));
    const Signal y = dct ? pt_dct(in.signal, p) : pt_dft(in.signal, p, edge);
    results.emplace_back("transformed", samples_of(y));
  } else {
    const std::vector<double> alphas = parse_sweep(o.alpha_sweep);
    h.add("alpha_sweep", o.alpha_sweep);
    h.add("alpha_steps", alphas.size());
    if (dct) {
      for (double a : alphas) results.emplace_back(column_name("alpha", a), samples_of(pt_dct(in.signal, PhaseProfile::constant(a))));
    } else {
      const std::vector<Signal> family = pt_dft_sweep(in.signal, alphas);
      for (std::size_t i = 0; i < alphas.size(); ++i) results.emplace_back(column_name("alpha", alphas[i]), samples_of(family[i]));
    }
  }

  const fs::path path = resolve_output(o.common.output, o.common.input, "pt", ".csv");
  write_series({o.common.output, o.common.wav_encoding}, path, h, in, results);
  out << "wrote " << path.string() << " (" << in.signal.size() << " samples, " << results.size() << " result column"
      << (results.size() == 1 ? "" : "s") << ")\n";
  return kExitOk;
}

int cmd_delay(const DelayOptions& o, std::ostream& out, std::ostream&) {
  const Series in = load_series(o.common.input, o.common.fs);
  Header h("delay");
  h.add("input", o.common.input);
  h.add("sample_rate", in.signal.sample_rate());
  h.add("basis", o.basis);
  h.add("samples", o.samples);
  const Signal y = o.basis == "dct" ? frac_delay_dct(in.signal, o.samples)
                                    : frac_delay_dft(in.signal, DelaySpec::uniform(o.samples));
  std::vector<std::pair<std::string, std::vector<double>>> results{{"delayed", samples_of(y)}};

  std::optional<double> max_error;
  if (!o.truth.empty()) {
    const io::TimeSeries truth = io::read_time_series_csv(o.truth);
    if (truth.values.size() != y.size()) throw InvalidArgument("delay: --truth length does not match the input");
    std::vector<double> error(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) error[i] = y[i] - truth.values[i];
    max_error = 0.0;
    for (double e : error) max_error = std::max(*max_error, std::abs(e));
    h.add("truth", o.truth);
    h.add("max_abs_error", *max_error);
    results.emplace_back("truth", truth.values);
    results.emplace_back("error", std::move(error));
  }

  const fs::path path = resolve_output(o.common.output, o.common.input, "delay", ".csv");
  if (max_error && is_wav(path)) throw InvalidArgument("delay: --truth needs CSV output");
  write_series({o.common.output, o.common.wav_encoding}, path, h, in, results);
  out << "wrote " << path.string() << "\n";
  if (max_error) out << "max |error| = " << format_double(*max_error) << "\n";
  return kExitOk;
}

int cmd_differint(const DifferintOptions& o, std::ostream& out, std::ostream& err) {
  const Series in = load_series(o.common.input, o.common.fs);
  const DifferintegrationOrder order{o.order, o.scaling == "normalized" ? DifferintegrationScaling::normalized
                                                                        : DifferintegrationScaling::physical};
  const DifferintegrationResult r = frac_differintegrate(in.signal, order, !o.no_dc_term);
  Header h("differint");
  h.add("input", o.common.input);
  h.add("sample_rate", in.signal.sample_rate());
  h.add("order", o.order);
  h.add("scaling", o.scaling);
  h.add("dc_term", o.no_dc_term ? "excluded" : "included");
  h.add("dc_singularity", r.dc_singularity ? "yes" : "no");
  if (r.dc_singularity) {
    err << "warning: nonzero mean with order > 0; the t^-mu term is singular at t = 0 and was set to 0 there\n";
  }
  const fs::path path = resolve_output(o.common.output, o.common.input, "differint", ".csv");
  write_series({o.common.output, o.common.wav_encoding}, path, h, in, {{"result", samples_of(r.signal)}});
  out << "wrote " << path.string() << "\n";
  return kExitOk;
}

int cmd_wpt(const WptOptions& o, std::ostream& out, std::ostream& err) {
  if (!o.alpha.empty() == !o.alpha_sweep.empty()) throw InvalidArgument("wpt: give exactly one of --alpha, --alpha-sweep");
  const Series in = load_series(o.common.input, o.common.fs);
  const WaveletSpec spec = WaveletSpec::generalized_morse(o.beta, o.gamma);
  const double max_period =
      o.max_period.value_or(std::max(o.min_period, static_cast<double>(analysis_length(in.signal.size())) / 4.0));
  const ScaleGrid grid = make_scale_grid(spec, o.min_period, max_period, o.voices);
  const WaveletAnalysis a = analyze(in.signal, grid, spec);

  Header h("wpt");
  h.add("input", o.common.input);
  h.add("sample_rate", in.signal.sample_rate());
  h.add("wavelet", "generalized_morse");
  h.add("beta", o.beta);
  h.add("gamma", o.gamma);
  h.add("voices_per_octave", o.voices);
  h.add("min_period_samples", o.min_period);
  h.add("max_period_samples", max_period);
  h.add("scales", a.scales);
  h.add("aliased_scales", a.aliased);
  h.add("reconstruction_residual", a.residual);

  std::vector<std::pair<std::string, std::vector<double>>> results;
  if (!o.alpha.empty()) {
    const double alpha = parse_angle(o.alpha);
    h.add("alpha", alpha);
    results.emplace_back("transformed", rotated_real(a.z, alpha));
  } else {
    const std::vector<double> alphas = parse_sweep(o.alpha_sweep);
    h.add("alpha_sweep", o.alpha_sweep);
    for (double alpha : alphas) results.emplace_back(column_name("alpha", alpha), rotated_real(a.z, alpha));
  }
  if (a.residual > kWptResidualWarning) {
    err << "warning: reconstruction residual " << format_double(a.residual) << " exceeds "
        << format_double(kWptResidualWarning) << "; the scale grid may not cover the signal band\n";
  }
  const fs::path path = resolve_output(o.common.output, o.common.input, "wpt", ".csv");
  write_series({o.common.output, o.common.wav_encoding}, path, h, in, results);
  out << "wrote " << path.string() << " (reconstruction residual " << format_double(a.residual) << ")\n";
  return kExitOk;
}

int cmd_image_pt(const ImageOptions& o, std::ostream& out, std::ostream&) {
  Image g;
  int maxval = 255;
  if (is_pgm(o.input)) {
    io::Graymap gm = io::read_pgm(o.input);
    g = std::move(gm.image);
    maxval = gm.maxval;
  } else {
    g = io::read_grid_csv(o.input);
  }
  validate_image(g);
  const double alpha = parse_angle(o.alpha);
  const LineConvention line = o.line == "rotation" ? LineConvention::rotation_on_line : LineConvention::cosine_on_line;
  const Image y = pt2d(g, alpha, line);

  Header h("image-pt");
  h.add("input", o.input);
  h.add("rows", g.rows);
  h.add("cols", g.cols);
  h.add("alpha", alpha);
  h.add("line", to_string(line));
  const fs::path path = resolve_output(o.output, o.input, "pt2d", ".csv");
  io::write_grid_csv(path, y, h.lines());
  out << "wrote " << path.string() << " (" << g.rows << "x" << g.cols << ")\n";
  if (!o.preview.empty()) {
    Header ph = h;
    ph.add("preview", "linear min-max rescale");
    const fs::path preview = o.preview;
    ensure_parent(preview);
    io::write_pgm_preview(preview, y, maxval > 255 ? 65535 : 255, ph.lines());
    out << "wrote " << preview.string() << "\n";
  }
  return kExitOk;
}

int cmd_synth(const SynthOptions& o, std::ostream& out, std::ostream&) {
  if (!(o.duration > 0.0) || !(o.rate > 0.0) || !(o.f0 > 0.0)) {
    throw InvalidArgument("synth: duration, fs and f0 must be positive");
  }
  FourierSeriesCoeffs c;
  c.a0 = o.a0;
  c.omega0 = 2.0 * kPi * o.f0;
  const std::vector<double> amps = parse_list(o.amplitudes, "--amplitudes");
  const std::vector<double> phases = o.phases.empty() ? std::vector<double>(amps.size(), 0.0) : parse_list(o.phases, "--phases");
  if (phases.size() != amps.size()) throw InvalidArgument("synth: --phases must match --amplitudes in length");
  for (std::size_t k = 0; k < amps.size(); ++k) c.harmonics.push_back({amps[k], phases[k]});
  const std::size_t count = o.harmonics.value_or(amps.size());

  const auto n = static_cast<std::size_t>(std::llround(o.duration * o.rate));
  if (n == 0) throw InvalidArgument("synth: duration * fs rounds to zero samples");
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i) / o.rate;

  Header h("synth");
  h.add("case", o.case_number);
  h.add("duration", o.duration);
  h.add("sample_rate", o.rate);
  h.add("f0", o.f0);
  h.add("a0", o.a0);
  h.add("amplitudes", o.amplitudes);
  h.add("phases", o.phases.empty() ? std::string("0") : o.phases);
  h.add("harmonics", count);

  ModulationSpec mods = ModulationSpec::identity();
  const double am = o.message_amplitude;
  const double fm = o.message_frequency;
  if (o.case_number == 6) {
    if (o.carrier_level < std::abs(am)) throw InvalidArgument("synth: case 6 needs carrier-level >= |message-amplitude|");
    mods = ModulationSpec::amplitude_modulated(o.carrier_level, [am, fm](double s) { return am * std::cos(2.0 * kPi * fm * s); });
    h.add("modulation", "amplitude, c1(t) = carrier_level + A cos(2 pi fm t)");
    h.add("carrier_level", o.carrier_level);
  } else if (o.case_number == 7) {
    mods = ModulationSpec::angle_modulated([am, fm](double s) { return am * std::sin(2.0 * kPi * fm * s); });
    h.add("modulation", "angle, alpha1(t) = A sin(2 pi fm t)");
  }
  if (o.case_number != 1) {
    h.add("message_amplitude", am);
    h.add("message_frequency", fm);
  }
  const Signal x = gfr_synthesize(c, mods, count, t);

  fs::path path = o.common.output.empty() ? default_output_dir() / ("synth_case" + std::to_string(o.case_number) + ".csv")
                                          : fs::path(o.common.output);
  ensure_parent(path);
  if (is_wav(path)) {
    io::WavData w{samples_of(x), o.rate, o.common.wav_encoding == "pcm16" ? io::WavEncoding::pcm16 : io::WavEncoding::float32,
                  h.joined()};
    io::write_wav(path, w);
  } else {
    io::CsvTable table;
    table.comments = h.lines();
    table.add_column("t", t);
    table.add_column("value", samples_of(x));
    io::write_csv(path, table);
  }
  out << "wrote " << path.string() << " (" << n << " samples)\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// reproduction of the worked examples

using nlohmann::ordered_json;

struct ReproContext {
  fs::path dir;
  ordered_json summary;
  std::vector<std::string> files;

  void write(const std::string& name, const Header& h, const std::vector<double>& t,
             const std::vector<std::pair<std::string, std::vector<double>>>& columns) {
    io::CsvTable table;
    table.comments = h.lines();
    table.add_column("t", t);
    for (const auto& [n, v] : columns) table.add_column(n, v);
    io::write_csv(dir / name, table);
    files.push_back(name);
  }
};

std::vector<double> grid(double duration, double rate) {
  const auto n = static_cast<std::size_t>(std::llround(duration * rate));
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i) / rate;
  return t;
}

std::vector<double> sampled(const std::vector<double>& t, const std::function<double(double)>& f) {
  std::vector<double> out(t.size());
  std::transform(t.begin(), t.end(), out.begin(), f);
  return out;
}

std::vector<double> step_family(int steps, double step) {
  std::vector<double> a;
  for (int i = 0; i <= steps; ++i) a.push_back(i * step);
  return a;
}

void repro_phase_sweep(ReproContext& ctx, int example) {
  const bool gauss = example == 1;
  const double rate = 1000.0;
  const double duration = gauss ? 5.0 : 1.0;
  const double step = gauss ? kPi / 20.0 : kPi / 10.0;
  const int steps = gauss ? 40 : 20;
  const auto t = grid(duration, rate);
  const auto x = gauss ? sampled(t, [](double s) { return std::exp(-(s - 2.5) * (s - 2.5)); })
                       : sampled(t, [](double s) { return std::sin(2.0 * kPi * s); });
  const Signal sx(x, rate);
  const auto alphas = step_family(steps, step);

  const std::vector<Signal> dft_family = pt_dft_sweep(sx, alphas);
  std::vector<std::pair<std::string, std::vector<double>>> dft_cols{{"original", x}};
  std::vector<std::pair<std::string, std::vector<double>>> dct_cols{{"original", x}};
  double max_difference = 0.0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const Signal d = pt_dct(sx, PhaseProfile::constant(alphas[i]));
    max_difference = std::max(max_difference, max_abs_diff(d.samples(), dft_family[i].samples()));
    dft_cols.emplace_back(column_name("alpha", alphas[i]), samples_of(dft_family[i]));
    dct_cols.emplace_back(column_name("alpha", alphas[i]), samples_of(d));
  }

  Header h("repro");
  h.add("example", example);
  h.add("signal", gauss ? "exp(-(t-2.5)^2), 0 <= t < 5" : "sin(2 pi t), 0 <= t < 1");
  h.add("sample_rate", rate);
  h.add("alpha_step", step);
  h.add("alpha_steps", alphas.size());
  Header hd = h;
  hd.add("basis", "dft");
  hd.add("edge", "cosine");
  Header hc = h;
  hc.add("basis", "dct");
  const std::string stem = "example" + std::to_string(example);
  ctx.write(stem + "_dft.csv", hd, t, dft_cols);
  ctx.write(stem + "_dct.csv", hc, t, dct_cols);

  std::vector<double> neg(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) neg[i] = -x[i];
  const std::size_t half = alphas.size() / 2;  // alpha = pi
  ctx.summary["parameters"] = {{"sample_rate", rate}, {"duration", duration}, {"alpha_step", step},
                               {"alpha_count", alphas.size()}};
  ctx.summary["metrics"] = {{"dft_closure_2pi_max_abs_error", max_abs_diff(dft_family.back().samples(), x)},
                            {"dft_pi_negation_max_abs_error", max_abs_diff(dft_family[half].samples(), neg)},
                            {"dft_dct_max_abs_difference", max_difference}};
}

void repro_delay(ReproContext& ctx) {
  ordered_json metrics;
  {
    const double rate = 10.0;
    const double n0 = 0.9;
    const auto t = grid(10.0, rate);
    const auto x = sampled(t, [](double s) { return std::exp(-(s - 5.0) * (s - 5.0)); });
    const double t0 = n0 / rate;
    const auto truth = sampled(t, [t0](double s) { return std::exp(-(s - t0 - 5.0) * (s - t0 - 5.0)); });
    const auto y = samples_of(frac_delay_dft(Signal(x, rate), DelaySpec::uniform(n0)));
    std::vector<double> err(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) err[i] = y[i] - truth[i];
    Header h("repro");
    h.add("example", 3);
    h.add("signal", "exp(-(t-5)^2), 0 <= t < 10");
    h.add("sample_rate", rate);
    h.add("delay_samples", n0);
    h.add("basis", "dft");
    ctx.write("example3_gaussian.csv", h, t, {{"original", x}, {"delayed", y}, {"truth", truth}, {"error", err}});
    metrics["gaussian_max_abs_error"] = max_abs_diff(y, truth);
  }
  {
    const double rate = 1.0;
    const double n0 = 0.7;
    const auto t = grid(100.0, rate);
    const auto x = sampled(t, [](double s) { return std::cos(kPi * s); });
    const auto truth = sampled(t, [n0](double s) { return std::cos(kPi * (s - n0)); });
    const auto y = samples_of(frac_delay_dft(Signal(x, rate), DelaySpec::uniform(n0)));
    std::vector<double> err(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) err[i] = y[i] - truth[i];
    Header h("repro");
    h.add("example", 3);
    h.add("signal", "cos(pi t), 0 <= t < 100");
    h.add("sample_rate", rate);
    h.add("delay_samples", n0);
    h.add("basis", "dft");
    ctx.write("example3_cosine.csv", h, t, {{"original", x}, {"delayed", y}, {"truth", truth}, {"error", err}});
    metrics["cosine_max_abs_error"] = max_abs_diff(y, truth);
  }
  ctx.summary["parameters"] = {{"gaussian", {{"sample_rate", 10.0}, {"duration", 10.0}, {"delay_samples", 0.9}}},
                               {"cosine", {{"sample_rate", 1.0}, {"duration", 100.0}, {"delay_samples", 0.7}}}};
  ctx.summary["metrics"] = metrics;
}

void repro_differint(ReproContext& ctx) {
  const double rate = 1000.0;
  const auto t = grid(10.0, rate);
  const auto x = sampled(t, [](double s) { return std::sin(2.0 * kPi * s); });
  const Signal sx(x, rate);
  const std::vector<double> orders{0.0, 0.25, 0.5, 0.75, 1.0};
  const double w = 2.0 * kPi / rate;
  ordered_json metrics;
  for (const char* kind : {"derivative", "integral"}) {
    const double sign = std::string(kind) == "derivative" ? 1.0 : -1.0;
    std::vector<std::pair<std::string, std::vector<double>>> cols;
    std::vector<double> leads;
    double previous = 0.0;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      const double mu = sign * orders[i];
      const auto y = samples_of(frac_differintegrate(sx, {mu, DifferintegrationScaling::physical}).signal);
      // A lead shows up as a decrease of phi in cos(w n - phi).
      const double phase = fitted_phase(y, w);
      if (i > 0) leads.push_back(std::remainder(previous - phase, 2.0 * kPi));
      previous = phase;
      cols.emplace_back(column_name("mu", orders[i]), y);
    }
    Header h("repro");
    h.add("example", 4);
    h.add("signal", "sin(2 pi t), 0 <= t < 10");
    h.add("sample_rate", rate);
    h.add("operation", kind);
    h.add("scaling", "physical");
    ctx.write(std::string("example4_") + kind + ".csv", h, t, cols);
    metrics[std::string(kind) + "_phase_lead_per_step"] = leads;
  }
  metrics["expected_lead_per_step"] = kPi / 8.0;
  ctx.summary["parameters"] = {{"sample_rate", rate}, {"duration", 10.0}, {"orders", orders}, {"scaling", "physical"}};
  ctx.summary["metrics"] = metrics;
}

void repro_wavelet(ReproContext& ctx) {
  const double rate = 1000.0;
  const auto t = grid(5.0, rate);
  const auto x = sampled(t, [](double s) { return std::cos(2.0 * kPi * s); });
  const Signal sx(x, rate);
  const WaveletSpec spec = WaveletSpec::generalized_morse();
  const ScaleGrid g = default_scale_grid(spec, x.size());
  const WaveletAnalysis a = analyze(sx, g, spec);
  const auto alphas = step_family(20, kPi / 10.0);
  std::vector<std::pair<std::string, std::vector<double>>> cols{{"original", x}};
  for (double alpha : alphas) cols.emplace_back(column_name("alpha", alpha), rotated_real(a.z, alpha));
  const auto hil = samples_of(hilbert(sx));
  cols.emplace_back("hilbert", hil);

  Header h("repro");
  h.add("example", 5);
  h.add("signal", "cos(2 pi t), 0 <= t < 5");
  h.add("sample_rate", rate);
  h.add("wavelet", "generalized_morse");
  h.add("beta", spec.beta());
  h.add("gamma", spec.gamma());
  h.add("voices_per_octave", g.voices_per_octave);
  h.add("scales", g.scales.size());
  h.add("alpha_step", kPi / 10.0);
  ctx.write("example5_wpt.csv", h, t, cols);

  const auto wqt_values = rotated_real(a.z, kPi / 2.0);
  std::vector<double> leads;
  const double w = 2.0 * kPi / rate;
  double previous = fitted_phase(cols[1].second, w);
  for (std::size_t i = 2; i < 1 + alphas.size(); ++i) {
    const double phase = fitted_phase(cols[i].second, w);
    leads.push_back(std::remainder(phase - previous, 2.0 * kPi));
    previous = phase;
  }
  ctx.summary["parameters"] = {{"sample_rate", rate},  {"duration", 5.0}, {"beta", spec.beta()},
                               {"gamma", spec.gamma()}, {"voices_per_octave", g.voices_per_octave},
                               {"scales", g.scales.size()}, {"alpha_step", kPi / 10.0}};
  ctx.summary["metrics"] = {{"reconstruction_interior_rel_l2", a.residual},
                            {"wqt_vs_hilbert_interior_rel_l2", interior_rel_l2(wqt_values, hil)},
                            {"aliased_scales", a.aliased},
                            {"phase_shift_per_step", leads},
                            {"expected_shift_per_step", kPi / 10.0}};
}

int cmd_repro(const ReproOptions& o, std::ostream& out) {
  ReproContext ctx;
  ctx.dir = o.outdir.empty() ? default_output_dir() / ("repro_example" + std::to_string(o.example)) : fs::path(o.outdir);
  std::error_code ec;
  fs::create_directories(ctx.dir, ec);
  if (ec) throw io::IoError("cannot create directory " + ctx.dir.string() + ": " + ec.message());

  ctx.summary["tool"] = std::string("gfr ") + version();
  ctx.summary["example"] = o.example;
  switch (o.example) {
    case 1:
    case 2: repro_phase_sweep(ctx, o.example); break;
    case 3: repro_delay(ctx); break;
    case 4: repro_differint(ctx); break;
    case 5: repro_wavelet(ctx); break;
    default: throw InvalidArgument("repro: example must be 1..5");
  }
  ctx.summary["files"] = ctx.files;

  const fs::path summary_path = ctx.dir / "summary.json";
  std::ofstream f(summary_path, std::ios::binary | std::ios::trunc);
  if (!f) throw io::IoError("cannot write " + summary_path.string());
  f << ctx.summary.dump(2) << '\n';
  if (!f) throw io::IoError("write error on " + summary_path.string());

  out << "example " << o.example << ": wrote " << ctx.files.size() + 1 << " files to " << ctx.dir.string() << "\n";
  for (const auto& [key, value] : ctx.summary["metrics"].items()) out << "  " << key << " = " << value.dump() << "\n";
  return kExitOk;
}

}  // namespace

const char* version() { return GFR_VERSION; }

double parse_angle(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw InvalidArgument("empty angle");
  std::size_t pos = 0;
  double sign = 1.0;
  if (text[pos] == '-' || text[pos] == '+') sign = text[pos++] == '-' ? -1.0 : 1.0;

  auto term = [&]() {
    if (text.compare(pos, 2, "pi") == 0) {
      pos += 2;
      return kPi;
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
    if (ec != std::errc() || ptr == text.data() + pos) throw InvalidArgument("cannot parse angle '" + raw + "'");
    pos = static_cast<std::size_t>(ptr - text.data());
    return v;
  };

  double value = term();
  while (pos < text.size()) {
    const char op = text[pos++];
    if (op != '*' && op != '/') throw InvalidArgument("cannot parse angle '" + raw + "'");
    const double rhs = term();
    if (op == '*') {
      value *= rhs;
    } else {
      if (rhs == 0.0) throw InvalidArgument("division by zero in angle '" + raw + "'");
      value /= rhs;
    }
  }
  value *= sign;
  if (!std::isfinite(value)) throw InvalidArgument("angle must be finite: '" + raw + "'");
  return value;
}

std::vector<double> parse_sweep(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw InvalidArgument("sweep must look like start:step:stop, got '" + text + "'");
  const double start = parse_angle(parts[0]);
  const double step = parse_angle(parts[1]);
  const double stop = parse_angle(parts[2]);
  if (step == 0.0) throw InvalidArgument("sweep step must be nonzero");
  const double span = (stop - start) / step;
  if (span < -1e-9) throw InvalidArgument("sweep step points away from stop");
  const double count = std::floor(span + 1e-9) + 1.0;
  if (count > 100000.0) throw InvalidArgument("sweep has too many steps");
  std::vector<double> out(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = start + static_cast<double>(i) * step;
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Phase transforms, fractional delay and differintegration, wavelet and image phase shifting",
               "gfr");
  app.set_version_flag("--version", std::string("gfr ") + version());
  app.set_config("--config", "", "key=value file; keys are <command>.<option> or grouped under [command]");
  app.allow_config_extras(false);
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  PtOptions pt;
  auto* pt_cmd = app.add_subcommand("pt", "Phase transform by DFT or DCT-2");
  add_common(pt_cmd, pt.common);
  auto* a1 = pt_cmd->add_option("--alpha", pt.alpha, "Constant phase in radians (accepts pi, pi/2, 2*pi)");
  auto* a2 = pt_cmd->add_option("--alpha-per-bin", pt.alpha_per_bin, "File with one phase per bin, starting at bin 0");
  auto* a3 = pt_cmd->add_option("--alpha-sweep", pt.alpha_sweep, "start:step:stop; one output column per phase");
  a1->excludes(a2)->excludes(a3);
  a2->excludes(a3);
  pt_cmd->add_option("--basis", pt.basis, "Transform basis")->check(CLI::IsMember({"dft", "dct"}))->capture_default_str();
  pt_cmd->add_option("--edge", pt.edge, "DC/Nyquist treatment")->check(CLI::IsMember({"cosine", "rotation"}))->capture_default_str();

  DelayOptions delay;
  auto* delay_cmd = app.add_subcommand("delay", "Fractional delay");
  add_common(delay_cmd, delay.common);
  delay_cmd->add_option("--samples", delay.samples, "Delay in samples (may be fractional)")->required();
  delay_cmd->add_option("--basis", delay.basis, "Transform basis")->check(CLI::IsMember({"dft", "dct"}))->capture_default_str();
  delay_cmd->add_option("--truth", delay.truth, "CSV (t,value) of the exact delayed signal; adds error columns");

  DifferintOptions diff;
  auto* diff_cmd = app.add_subcommand("differint", "Fractional derivative (order > 0) or integral (order < 0)");
  add_common(diff_cmd, diff.common);
  diff_cmd->add_option("--order", diff.order, "Order mu")->required();
  diff_cmd->add_option("--scaling", diff.scaling, "physical multiplies by fs^mu; normalized is per sample")
      ->check(CLI::IsMember({"physical", "normalized"}))
      ->capture_default_str();
  diff_cmd->add_flag("--no-dc-term", diff.no_dc_term, "Leave out the a0 t^-mu / Gamma(1 - mu) term");

  WptOptions wpt_o;
  auto* wpt_cmd = app.add_subcommand("wpt", "Wavelet phase transform (alpha = pi/2 gives the quadrature)");
  add_common(wpt_cmd, wpt_o.common);
  wpt_cmd->add_option("--alpha", wpt_o.alpha, "Phase in radians");
  wpt_cmd->add_option("--alpha-sweep", wpt_o.alpha_sweep, "start:step:stop");
  wpt_cmd->add_option("--beta", wpt_o.beta, "Morse beta")->capture_default_str();
  wpt_cmd->add_option("--gamma", wpt_o.gamma, "Morse gamma")->capture_default_str();
  wpt_cmd->add_option("--voices", wpt_o.voices, "Voices per octave")->check(CLI::PositiveNumber)->capture_default_str();
  wpt_cmd->add_option("--min-period", wpt_o.min_period, "Shortest analysed period, samples")->check(CLI::PositiveNumber)->capture_default_str();
  wpt_cmd->add_option("--max-period", wpt_o.max_period, "Longest analysed period, samples (default 3N/4)")->check(CLI::PositiveNumber);

  ImageOptions img;
  auto* img_cmd = app.add_subcommand("image-pt", "2D phase transform of a PGM (P5) or CSV grid");
  img_cmd->add_option("input", img.input, "Input .pgm or CSV grid")->required();
  img_cmd->add_option("-o,--output", img.output, "Output CSV grid");
  img_cmd->add_option("--alpha", img.alpha, "Phase in radians")->required();
  img_cmd->add_option("--line", img.line, "Treatment of the W1 + W2 = 0 line")
      ->check(CLI::IsMember({"cosine", "rotation"}))
      ->capture_default_str();
  img_cmd->add_option("--preview", img.preview, "Also write a rescaled PGM preview here");

  SynthOptions syn;
  auto* syn_cmd = app.add_subcommand("synth", "Synthesize a test signal: 1 Fourier series, 6 AM, 7 angle modulation");
  add_common(syn_cmd, syn.common, false);
  syn_cmd->remove_option(syn_cmd->get_option("--fs"));
  syn_cmd->add_option("--case", syn.case_number, "Preset")->check(CLI::IsMember({1, 6, 7}))->required();
  syn_cmd->add_option("--duration", syn.duration, "Seconds")->capture_default_str();
  syn_cmd->add_option("--fs", syn.rate, "Sample rate, Hz")->capture_default_str();
  syn_cmd->add_option("--f0", syn.f0, "Fundamental, Hz")->capture_default_str();
  syn_cmd->add_option("--a0", syn.a0, "DC term")->capture_default_str();
  syn_cmd->add_option("--amplitudes", syn.amplitudes, "Comma list r_1,r_2,...")->capture_default_str();
  syn_cmd->add_option("--phases", syn.phases, "Comma list phi_1,phi_2,... (default 0)");
  syn_cmd->add_option("--harmonics", syn.harmonics, "Number of harmonics K (default: all)");
  syn_cmd->add_option("--carrier-level", syn.carrier_level, "Case 6: c1(t) = level + message")->capture_default_str();
  syn_cmd->add_option("--message-amplitude", syn.message_amplitude, "Message amplitude")->capture_default_str();
  syn_cmd->add_option("--message-frequency", syn.message_frequency, "Message frequency, Hz")->capture_default_str();

  ReproOptions rep;
  auto* rep_cmd = app.add_subcommand("repro", "Regenerate the data of worked example 1..5");
  rep_cmd->add_option("example", rep.example, "Example number")->check(CLI::Range(1, 5))->required();
  rep_cmd->add_option("--outdir", rep.outdir, "Output directory (default $GFR_OUTPUT_DIR/repro_exampleN)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << "gfr " << version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "FileError") {
      err << "error: " << e.what() << "\n";
      return kExitIo;
    }
    err << "error: " << e.what() << "\n";
    return kExitArgument;
  }

  try {
    if (pt_cmd->parsed()) return cmd_pt(pt, out, err);
    if (delay_cmd->parsed()) return cmd_delay(delay, out, err);
    if (diff_cmd->parsed()) return cmd_differint(diff, out, err);
    if (wpt_cmd->parsed()) return cmd_wpt(wpt_o, out, err);
    if (img_cmd->parsed()) return cmd_image_pt(img, out, err);
    if (syn_cmd->parsed()) return cmd_synth(syn, out, err);
    if (rep_cmd->parsed()) return cmd_repro(rep, out);
  } catch (const io::IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitArgument;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  err << "error: no command given\n";
  return kExitArgument;
}

}  // namespace gfr::cli
