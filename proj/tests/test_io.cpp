#include <clocale>
#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "gfr/io/csv.hpp"
#include "gfr/io/pgm.hpp"
#include "gfr/io/wav.hpp"
#include "test_util.hpp"

using namespace gfr;
using namespace gfr::io;
using gfr::testing::read_file;
using gfr::testing::TempDir;
using gfr::testing::write_file;

TEST_CASE("format_double round-trips with 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5e-300) == "-2.5e-300");
  CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, (i % 40) - 20);
    CHECK(parse_double(format_double(v), "test") == v);
  }
  CHECK(parse_double(" +3.5 ", "x") == 3.5);
  CHECK_THROWS_AS(parse_double("abc", "x"), IoError);
  CHECK_THROWS_AS(parse_double("1.5x", "x"), IoError);
  CHECK_THROWS_AS(parse_double("", "x"), IoError);
}

TEST_CASE("CSV output ignores the process locale") {
  const char* previous = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = previous ? previous : "C";
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") != nullptr) {
    CHECK(format_double(1.25) == "1.25");
    CHECK(parse_double("1.25", "x") == 1.25);
  }
  std::setlocale(LC_NUMERIC, saved.c_str());
}

TEST_CASE("time series CSV") {
  TempDir dir("csv");
  SUBCASE("round trip with comments and header") {
    CsvTable table;
    table.comments = {"tool 1", "params a=1"};
    std::vector<double> t{0.0, 0.001, 0.002};
    std::vector<double> v{1.0 / 3.0, -2.0, 1e-20};
    table.add_column("t", t);
    table.add_column("value", v);
    write_csv(dir / "a.csv", table);
    const std::string text = read_file(dir / "a.csv");
    CHECK(text.rfind("# tool 1\n# params a=1\nt,value\n0,0.33333333333333331\n", 0) == 0);
    CHECK(text.find('\r') == std::string::npos);

    const TimeSeries ts = read_time_series_csv(dir / "a.csv");
    CHECK(ts.values == v);
    CHECK(ts.t == t);
    CHECK(ts.sample_rate == doctest::Approx(1000.0));
  }
  SUBCASE("extra columns and CRLF are tolerated") {
    write_file(dir / "b.csv", "t,x,y\r\n0,1,9\r\n0.5,2,9\r\n");
    const TimeSeries ts = read_time_series_csv(dir / "b.csv");
    CHECK(ts.values == std::vector<double>{1.0, 2.0});
    CHECK(ts.sample_rate == 2.0);
  }
  SUBCASE("single row defaults to 1 Hz") {
    write_file(dir / "c.csv", "0,4\n");
    CHECK(read_time_series_csv(dir / "c.csv").sample_rate == 1.0);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(read_time_series_csv(dir / "missing.csv"), IoError);
    write_file(dir / "bad.csv", "t,v\n0,1\n1,oops\n");
    CHECK_THROWS_AS(read_time_series_csv(dir / "bad.csv"), IoError);
    write_file(dir / "empty.csv", "# nothing\n");
    CHECK_THROWS_AS(read_time_series_csv(dir / "empty.csv"), IoError);
    write_file(dir / "dec.csv", "1,1\n0,2\n");
    CHECK_THROWS_AS(read_time_series_csv(dir / "dec.csv"), IoError);
    CsvTable ragged;
    ragged.add_column("a", {1, 2});
    ragged.add_column("b", {1});
    CHECK_THROWS_AS(write_csv(dir / "r.csv", ragged), IoError);
    CHECK_THROWS_AS(write_csv(dir / "no_such_dir" / "r.csv", CsvTable{}), IoError);
  }
}

TEST_CASE("grid CSV") {
  TempDir dir("grid");
  Image g(3, 4);
  for (std::size_t i = 0; i < g.size(); ++i) g.data[i] = std::sin(0.7 * i) * 1e3;
  write_grid_csv(dir / "g.csv", g, {"grid"});
  const Image back = read_grid_csv(dir / "g.csv");
  CHECK(back.rows == 3);
  CHECK(back.cols == 4);
  CHECK(back.data == g.data);

  write_file(dir / "ragged.csv", "1,2\n3\n");
  CHECK_THROWS_AS(read_grid_csv(dir / "ragged.csv"), IoError);
  write_file(dir / "text.csv", "1,a\n");
  CHECK_THROWS_AS(read_grid_csv(dir / "text.csv"), IoError);
  write_file(dir / "none.csv", "");
  CHECK_THROWS_AS(read_grid_csv(dir / "none.csv"), IoError);
}

TEST_CASE("WAV read and write") {
  TempDir dir("wav");
  SUBCASE("16-bit PCM") {
    WavData w{{0.0, 0.5, -0.5, -1.0, 32767.0 / 32768.0}, 8000.0, WavEncoding::pcm16, {}};
    write_wav(dir / "a.wav", w);
    const WavData r = read_wav(dir / "a.wav");
    CHECK(r.encoding == WavEncoding::pcm16);
    CHECK(r.sample_rate == 8000.0);
    CHECK(r.samples == w.samples);
    CHECK(read_file(dir / "a.wav").size() == 44 + 2 * w.samples.size());
    CHECK(r.comment.empty());
  }
  SUBCASE("comment chunk") {
    WavData w{{0.25, -0.25}, 16000.0, WavEncoding::float32, "gfr 1.0 | command: pt"};
    write_wav(dir / "m.wav", w);
    const WavData r = read_wav(dir / "m.wav");
    CHECK(r.comment == w.comment);
    CHECK(r.samples == w.samples);
    CHECK(read_file(dir / "m.wav").find("INFOICMT") != std::string::npos);
  }
  SUBCASE("PCM clips and rounds") {
    WavData w{{2.0, -3.0, 0.25 + 1e-7}, 100.0, WavEncoding::pcm16, {}};
    write_wav(dir / "c.wav", w);
    const WavData r = read_wav(dir / "c.wav");
    CHECK(r.samples[0] == 32767.0 / 32768.0);
    CHECK(r.samples[1] == -1.0);
    CHECK(r.samples[2] == 0.25);
  }
  SUBCASE("32-bit float") {
    WavData w{{0.1, -0.75, 0.3333}, 44100.0, WavEncoding::float32, {}};
    write_wav(dir / "f.wav", w);
    const WavData r = read_wav(dir / "f.wav");
    CHECK(r.encoding == WavEncoding::float32);
    CHECK(r.sample_rate == 44100.0);
    for (std::size_t i = 0; i < w.samples.size(); ++i) CHECK(r.samples[i] == static_cast<float>(w.samples[i]));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(read_wav(dir / "missing.wav"), IoError);
    write_file(dir / "junk.wav", "not a wav file at all, definitely not");
    CHECK_THROWS_AS(read_wav(dir / "junk.wav"), IoError);
    // Stereo header: patch the channel count of a valid file.
    write_wav(dir / "s.wav", WavData{{0.0, 0.0}, 100.0, WavEncoding::pcm16, {}});
    std::string bytes = read_file(dir / "s.wav");
    bytes[22] = 2;
    write_file(dir / "s.wav", bytes);
    CHECK_THROWS_AS(read_wav(dir / "s.wav"), IoError);
    write_wav(dir / "t.wav", WavData{{0.0, 0.0, 0.0}, 100.0, WavEncoding::pcm16, {}});
    bytes = read_file(dir / "t.wav");
    write_file(dir / "t.wav", bytes.substr(0, bytes.size() - 3));
    CHECK_THROWS_AS(read_wav(dir / "t.wav"), IoError);
  }
}

TEST_CASE("PGM read and write") {
  TempDir dir("pgm");
  SUBCASE("8-bit round trip") {
    Graymap g{Image(3, 5), 255, {}};
    for (std::size_t i = 0; i < g.image.size(); ++i) g.image.data[i] = static_cast<double>((i * 37) % 256);
    write_pgm(dir / "a.pgm", g);
    CHECK(read_file(dir / "a.pgm").rfind("P5\n5 3\n255\n", 0) == 0);
    const Graymap r = read_pgm(dir / "a.pgm");
    CHECK(r.maxval == 255);
    CHECK(r.image.rows == 3);
    CHECK(r.image.cols == 5);
    CHECK(r.image.data == g.image.data);
  }
  SUBCASE("16-bit round trip") {
    Graymap g{Image(4, 2), 65535, {}};
    g.image.data = {0, 1, 256, 65535, 1000, 40000, 7, 300};
    write_pgm(dir / "b.pgm", g);
    const Graymap r = read_pgm(dir / "b.pgm");
    CHECK(r.maxval == 65535);
    CHECK(r.image.data == g.image.data);
  }
  SUBCASE("written comments precede the dimensions") {
    Graymap g{Image(1, 2, 7.0), 255, {"gfr test", "alpha: 1"}};
    write_pgm(dir / "k.pgm", g);
    CHECK(read_file(dir / "k.pgm").rfind("P5\n# gfr test\n# alpha: 1\n2 1\n255\n", 0) == 0);
    CHECK(read_pgm(dir / "k.pgm").image.data == g.image.data);
  }
  SUBCASE("header comments are skipped") {
    write_file(dir / "c.pgm", std::string("P5\n# made by hand\n2 1\n# max\n255\n") + char(10) + char(200));
    const Graymap r = read_pgm(dir / "c.pgm");
    CHECK(r.image.data == std::vector<double>{10, 200});
  }
  SUBCASE("preview rescales") {
    Image img(2, 2);
    img.data = {-1.0, 0.0, 1.0, 3.0};
    write_pgm_preview(dir / "p.pgm", img);
    const Graymap r = read_pgm(dir / "p.pgm");
    CHECK(r.image.data == std::vector<double>{0, 64, 128, 255});
    write_pgm_preview(dir / "flat.pgm", Image(2, 2, 5.0));
    CHECK(read_pgm(dir / "flat.pgm").image.data == std::vector<double>(4, 128));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(read_pgm(dir / "missing.pgm"), IoError);
    write_file(dir / "p2.pgm", "P2\n1 1\n255\n0\n");
    CHECK_THROWS_AS(read_pgm(dir / "p2.pgm"), IoError);
    write_file(dir / "short.pgm", "P5\n4 4\n255\nab");
    CHECK_THROWS_AS(read_pgm(dir / "short.pgm"), IoError);
    write_file(dir / "zero.pgm", "P5\n0 4\n255\n");
    CHECK_THROWS_AS(read_pgm(dir / "zero.pgm"), IoError);
    CHECK_THROWS_AS(write_pgm(dir / "x.pgm", Graymap{Image(1, 1), 70000, {}}), IoError);
  }
}

TEST_CASE("read_csv inverts write_csv") {
  TempDir dir("csv_table");
  CsvTable t;
  t.comments = {"gfr 1", "command: x"};
  t.add_column("t", {0.0, 0.5, 1.0});
  t.add_column("v", {1.0 / 3.0, -2.5e-300, 7.0});
  write_csv(dir / "t.csv", t);
  const CsvTable r = read_csv(dir / "t.csv");
  CHECK(r.comments == t.comments);
  CHECK(r.names == t.names);
  CHECK(r.columns == t.columns);
  write_file(dir / "bad.csv", "a,b\n1,2\n3\n");
  CHECK_THROWS_AS(read_csv(dir / "bad.csv"), IoError);
  write_file(dir / "empty.csv", "# only\n");
  CHECK_THROWS_AS(read_csv(dir / "empty.csv"), IoError);
}
