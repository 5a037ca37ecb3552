#include <cmath>
#include <cstdlib>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "gfr/phase_transform.hpp"
#include "gfr/io/csv.hpp"
#include "gfr/io/pgm.hpp"
#include "gfr/io/wav.hpp"
#include "json.hpp"
#include "test_util.hpp"

using gfr::testing::kPi;
using gfr::testing::read_file;
using gfr::testing::TempDir;
using gfr::testing::write_file;
namespace cli = gfr::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string make_input(const TempDir& dir, const std::string& name = "x.csv", std::size_t n = 256) {
  std::string text = "t,value\n";
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / 100.0;
    text += gfr::io::format_double(t) + "," + gfr::io::format_double(std::exp(-(t - 1.28) * (t - 1.28))) + "\n";
  }
  const std::string path = (dir / name).string();
  write_file(path, text);
  return path;
}

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const std::string& value) : name_(name) { setenv(name, value.c_str(), 1); }
  ~ScopedEnv() { unsetenv(name_); }

 private:
  const char* name_;
};

}  // namespace

TEST_CASE("angle and sweep parsing") {
  CHECK(cli::parse_angle("1.5") == 1.5);
  CHECK(cli::parse_angle("pi") == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(cli::parse_angle("-pi/20") == doctest::Approx(-kPi / 20).epsilon(1e-15));
  CHECK(cli::parse_angle("2*pi") == doctest::Approx(2 * kPi).epsilon(1e-15));
  CHECK(cli::parse_angle("3*pi/4") == doctest::Approx(0.75 * kPi).epsilon(1e-15));
  CHECK_THROWS_AS(cli::parse_angle(""), gfr::InvalidArgument);
  CHECK_THROWS_AS(cli::parse_angle("pi/0"), gfr::InvalidArgument);
  CHECK_THROWS_AS(cli::parse_angle("one"), gfr::InvalidArgument);

  const auto s = cli::parse_sweep("0:pi/20:2*pi");
  REQUIRE(s.size() == 41);
  CHECK(s.back() == doctest::Approx(2 * kPi).epsilon(1e-14));
  CHECK(cli::parse_sweep("1:-0.5:0").size() == 3);
  CHECK_THROWS_AS(cli::parse_sweep("0:0:1"), gfr::InvalidArgument);
  CHECK_THROWS_AS(cli::parse_sweep("0:1:-1"), gfr::InvalidArgument);
  CHECK_THROWS_AS(cli::parse_sweep("0:1"), gfr::InvalidArgument);
}

TEST_CASE("exit codes") {
  TempDir dir("cli_exit");
  const std::string in = make_input(dir);
  const std::string out = (dir / "o.csv").string();

  CHECK(run({"--version"}).code == cli::kExitOk);
  CHECK(run({"--help"}).code == cli::kExitOk);
  CHECK(run({}).code == cli::kExitArgument);
  CHECK(run({"frobnicate"}).code == cli::kExitArgument);
  CHECK(run({"pt", in}).code == cli::kExitArgument);
  CHECK(run({"pt", in, "--alpha", "1", "--alpha-sweep", "0:1:2"}).code == cli::kExitArgument);
  CHECK(run({"pt", in, "--alpha", "x", "-o", out}).code == cli::kExitArgument);
  CHECK(run({"pt", in, "--alpha", "1", "--basis", "dst"}).code == cli::kExitArgument);
  CHECK(run({"delay", in, "-o", out}).code == cli::kExitArgument);
  CHECK(run({"repro", "6"}).code == cli::kExitArgument);
  CHECK(run({"synth", "--case", "6", "--carrier-level", "0.1", "--message-amplitude", "1", "-o", out}).code ==
        cli::kExitArgument);

  const Outcome missing = run({"pt", (dir / "missing.csv").string(), "--alpha", "1"});
  CHECK(missing.code == cli::kExitIo);
  CHECK(missing.err.find("error") != std::string::npos);
  write_file(dir / "bad.csv", "t,value\n0,1\n1,oops\n");
  CHECK(run({"pt", (dir / "bad.csv").string(), "--alpha", "1", "-o", out}).code == cli::kExitIo);
  CHECK(run({"--config", (dir / "nope.ini").string(), "pt", in, "--alpha", "1"}).code == cli::kExitIo);

  write_file(dir / "inf.csv", "t,value\n0,1\n1,1e308\n2,-1e308\n3,1e308\n");
  CHECK(run({"differint", (dir / "inf.csv").string(), "--order", "-40", "--scaling", "normalized", "-o", out}).code ==
        cli::kExitNumeric);
}

TEST_CASE("pt output has a header and 17-digit columns, and is deterministic") {
  TempDir dir("cli_pt");
  const std::string in = make_input(dir);
  const auto a = dir / "a.csv";
  const auto b = dir / "b.csv";
  REQUIRE(run({"pt", in, "--alpha", "pi/2", "-o", a.string()}).code == 0);
  REQUIRE(run({"pt", in, "--alpha", "pi/2", "-o", b.string()}).code == 0);
  const std::string text = read_file(a);
  CHECK(text == read_file(b));
  CHECK(text.rfind("# gfr " + std::string(cli::version()) + "\n# command: pt\n", 0) == 0);
  CHECK(text.find("# alpha: 1.5707963267948966\n") != std::string::npos);
  CHECK(text.find("# basis: dft\n") != std::string::npos);
  CHECK(text.find("t,original,transformed\n") != std::string::npos);
  CHECK(text.find('\r') == std::string::npos);

  const gfr::io::CsvTable table = gfr::io::read_csv(a);
  REQUIRE(table.columns.size() == 3);
  const gfr::Signal expected = gfr::hilbert(gfr::Signal(table.columns[1], 100.0));
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(table.columns[2][i] == expected[i]);

  const auto sweep = dir / "sweep.csv";
  REQUIRE(run({"pt", in, "--alpha-sweep", "0:pi/2:2*pi", "--basis", "dct", "-o", sweep.string()}).code == 0);
  const gfr::io::CsvTable st = gfr::io::read_csv(sweep);
  REQUIRE(st.columns.size() == 7);
  CHECK(st.names[2] == "alpha=0");
  for (std::size_t i = 0; i < st.columns[1].size(); ++i) {
    CHECK(std::abs(st.columns[6][i] - st.columns[1][i]) < 1e-12);
    CHECK(std::abs(st.columns[4][i] + st.columns[1][i]) < 1e-12);
  }

  write_file(dir / "bins.csv", "0\n0.5\n1\n");
  write_file(dir / "short.csv", "t,value\n0,1\n1,2\n2,0\n3,-1\n");
  CHECK(run({"pt", (dir / "short.csv").string(), "--alpha-per-bin", (dir / "bins.csv").string(), "-o",
             (dir / "pb.csv").string()})
            .code == 0);
  CHECK(run({"pt", in, "--alpha-per-bin", (dir / "bins.csv").string(), "-o", (dir / "pb2.csv").string()}).code ==
        cli::kExitArgument);
}

TEST_CASE("output directory comes from the environment unless -o is given") {
  TempDir dir("cli_env");
  const std::string in = make_input(dir, "sig.csv");
  const auto outdir = dir / "nested" / "out";
  ScopedEnv env(cli::kOutputDirEnv, outdir.string());
  REQUIRE(run({"differint", in, "--order", "0.5"}).code == 0);
  CHECK(std::filesystem::exists(outdir / "sig_differint.csv"));
  REQUIRE(run({"delay", in, "--samples", "1.5", "-o", (dir / "explicit.csv").string()}).code == 0);
  CHECK(std::filesystem::exists(dir / "explicit.csv"));
  CHECK_FALSE(std::filesystem::exists(outdir / "sig_delay.csv"));
}

TEST_CASE("config file supplies defaults and flags override it") {
  TempDir dir("cli_config");
  const std::string in = make_input(dir);
  write_file(dir / "c.ini", "[pt]\nalpha=pi/3\nbasis=dct\n");
  const auto a = dir / "a.csv";
  REQUIRE(run({"--config", (dir / "c.ini").string(), "pt", in, "-o", a.string()}).code == 0);
  const std::string ta = read_file(a);
  CHECK(ta.find("# alpha: 1.0471975511965976\n") != std::string::npos);
  CHECK(ta.find("# basis: dct\n") != std::string::npos);

  const auto b = dir / "b.csv";
  REQUIRE(run({"--config", (dir / "c.ini").string(), "pt", in, "--basis", "dft", "--alpha", "1", "-o", b.string()})
              .code == 0);
  const std::string tb = read_file(b);
  CHECK(tb.find("# alpha: 1\n") != std::string::npos);
  CHECK(tb.find("# basis: dft\n") != std::string::npos);

  write_file(dir / "dotted.ini", "delay.samples=2.25\n");
  const auto c = dir / "c.csv";
  REQUIRE(run({"--config", (dir / "dotted.ini").string(), "delay", in, "-o", c.string()}).code == 0);
  CHECK(read_file(c).find("# samples: 2.25\n") != std::string::npos);

  write_file(dir / "bad.ini", "[pt]\nalpah=1\n");
  CHECK(run({"--config", (dir / "bad.ini").string(), "pt", in, "--alpha", "1"}).code == cli::kExitArgument);
}

TEST_CASE("delay with truth reports the error") {
  TempDir dir("cli_delay");
  std::string x = "t,value\n";
  std::string y = "t,value\n";
  for (int i = 0; i < 100; ++i) {
    x += std::to_string(i) + "," + gfr::io::format_double(std::cos(kPi * i)) + "\n";
    y += std::to_string(i) + "," + gfr::io::format_double(std::cos(kPi * (i - 0.7))) + "\n";
  }
  write_file(dir / "x.csv", x);
  write_file(dir / "y.csv", y);
  const auto out = dir / "d.csv";
  const Outcome r = run({"delay", (dir / "x.csv").string(), "--samples", "0.7", "--truth", (dir / "y.csv").string(),
                         "-o", out.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("max |error|") != std::string::npos);
  const gfr::io::CsvTable t = gfr::io::read_csv(out);
  REQUIRE(t.names.back() == "error");
  for (double e : t.columns.back()) CHECK(std::abs(e) < 1e-12);
}

TEST_CASE("WAV in and out") {
  TempDir dir("cli_wav");
  const auto in = dir / "tone.wav";
  REQUIRE(run({"synth", "--case", "7", "--duration", "0.5", "--fs", "8000", "--f0", "100", "-o", in.string(),
               "--wav-encoding", "pcm16"})
              .code == 0);
  const gfr::io::WavData w = gfr::io::read_wav(in);
  CHECK(w.encoding == gfr::io::WavEncoding::pcm16);
  CHECK(w.sample_rate == 8000.0);
  CHECK(w.samples.size() == 4000);
  CHECK(w.comment.find("command: synth") != std::string::npos);

  const auto out = dir / "shifted.wav";
  REQUIRE(run({"pt", in.string(), "--alpha", "pi", "-o", out.string()}).code == 0);
  const gfr::io::WavData s = gfr::io::read_wav(out);
  CHECK(s.encoding == gfr::io::WavEncoding::float32);
  REQUIRE(s.samples.size() == w.samples.size());
  for (std::size_t i = 0; i < s.samples.size(); ++i) CHECK(std::abs(s.samples[i] + w.samples[i]) < 1e-6);
  CHECK(s.comment.find("alpha: 3.1415926535897931") != std::string::npos);

  CHECK(run({"pt", in.string(), "--alpha-sweep", "0:1:2", "-o", (dir / "multi.wav").string()}).code ==
        cli::kExitArgument);
}

TEST_CASE("synth cases") {
  TempDir dir("cli_synth");
  const auto p = dir / "s1.csv";
  REQUIRE(run({"synth", "--case", "1", "--amplitudes", "1,0.5", "--phases", "0,pi/2", "--a0", "0.25", "-o",
               p.string()})
              .code == 0);
  const gfr::io::CsvTable t = gfr::io::read_csv(p);
  REQUIRE(t.columns[0].size() == 1000);
  for (std::size_t i = 0; i < 1000; i += 37) {
    const double s = t.columns[0][i];
    const double want = 0.25 + std::cos(2 * kPi * s) + 0.5 * std::cos(4 * kPi * s + kPi / 2);
    CHECK(t.columns[1][i] == doctest::Approx(want).epsilon(1e-12));
  }
  CHECK(run({"synth", "--case", "6", "-o", (dir / "s6.csv").string()}).code == 0);
  CHECK(run({"synth", "--case", "2", "-o", (dir / "s2.csv").string()}).code == cli::kExitArgument);
  CHECK(run({"synth", "--case", "1", "--amplitudes", "1", "--phases", "0,1", "-o", (dir / "x.csv").string()})
            .code == cli::kExitArgument);
}

TEST_CASE("wpt warns on poor reconstruction") {
  TempDir dir("cli_wpt");
  std::string text = "t,value\n";
  for (int i = 0; i < 1024; ++i) text += std::to_string(i) + "," + gfr::io::format_double(std::cos(2 * kPi * i / 32.0)) + "\n";
  write_file(dir / "x.csv", text);
  const Outcome good = run({"wpt", (dir / "x.csv").string(), "--alpha", "pi/2", "-o", (dir / "a.csv").string()});
  REQUIRE(good.code == 0);
  CHECK(good.err.empty());
  const Outcome bad = run({"wpt", (dir / "x.csv").string(), "--alpha", "pi/2", "--min-period", "200", "-o",
                           (dir / "b.csv").string()});
  REQUIRE(bad.code == 0);
  CHECK(bad.err.find("warning") != std::string::npos);
  CHECK(read_file(dir / "b.csv").find("# reconstruction_residual: ") != std::string::npos);
}

TEST_CASE("image-pt on PGM with preview") {
  TempDir dir("cli_image");
  std::string pgm = "P5\n8 6\n255\n";
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 8; ++c) pgm.push_back(static_cast<char>((r * 31 + c * 17) % 256));
  }
  write_file(dir / "in.pgm", pgm);
  const auto out = dir / "out.csv";
  const auto preview = dir / "prev.pgm";
  REQUIRE(run({"image-pt", (dir / "in.pgm").string(), "--alpha", "pi/2", "-o", out.string(), "--preview",
               preview.string()})
              .code == 0);
  const std::string text = read_file(out);
  CHECK(text.rfind("# gfr ", 0) == 0);
  CHECK(text.find("# line: cosine\n") != std::string::npos);
  const gfr::Image g = gfr::io::read_grid_csv(out);
  CHECK(g.rows == 6);
  CHECK(g.cols == 8);
  const gfr::io::Graymap p = gfr::io::read_pgm(preview);
  CHECK(p.image.rows == 6);
  CHECK(read_file(preview).find("# command: image-pt") != std::string::npos);

  write_file(dir / "grid.csv", "1,2\n3,4\n");
  CHECK(run({"image-pt", (dir / "grid.csv").string(), "--alpha", "1", "-o", (dir / "g.csv").string()}).code == 0);
  CHECK(run({"image-pt", (dir / "grid.csv").string(), "-o", (dir / "g.csv").string()}).code == cli::kExitArgument);
}

TEST_CASE("repro writes data and a summary") {
  TempDir dir("cli_repro");
  ScopedEnv env(cli::kOutputDirEnv, dir.path().string());
  REQUIRE(run({"repro", "3"}).code == 0);
  const auto summary_path = dir / "repro_example3" / "summary.json";
  REQUIRE(std::filesystem::exists(summary_path));
  const auto j = nlohmann::json::parse(read_file(summary_path));
  CHECK(j["example"] == 3);
  CHECK(j["metrics"]["gaussian_max_abs_error"].get<double>() <= 1e-9);
  CHECK(j["metrics"]["cosine_max_abs_error"].get<double>() <= 1e-12);
  for (const auto& f : j["files"]) CHECK(std::filesystem::exists(dir / "repro_example3" / f.get<std::string>()));

  const auto again = dir / "again";
  REQUIRE(run({"repro", "3", "--outdir", again.string()}).code == 0);
  CHECK(read_file(again / "example3_gaussian.csv") == read_file(dir / "repro_example3" / "example3_gaussian.csv"));
}
