#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <unistd.h>

#include "qst/json_io.hpp"
#include "qst/rng.hpp"

namespace fs = std::filesystem;
using qst::KeySet;
using qst::PauliKey;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("qst_io_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

}  // namespace

TEST_CASE("deterministic json emitter") {
  qst::io::Json j = qst::io::Json::object();
  j.set("b", qst::io::Json::integer(2));
  j.set("a", qst::io::Json::number(0.1));
  qst::io::Json arr = qst::io::Json::array();
  arr.push(qst::io::Json::string("x\"y"));
  arr.push(qst::io::Json::boolean(true));
  arr.push(qst::io::Json::null());
  j.set("list", std::move(arr));
  const std::string text = j.dump(0);
  // Keys stay in insertion order; 17 significant digits for doubles.
  CHECK(text ==
        "{\"b\":2,\"a\":0.10000000000000001,\"list\":[\"x\\\"y\",true,null]}\n");
  CHECK(qst::io::format_double(1.0) == "1");
  CHECK(qst::io::format_double(0.2) == "0.20000000000000001");
}

TEST_CASE("fnv1a64 known values") {
  // Reference values for the 64-bit FNV-1a parameters.
  CHECK(qst::io::fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(qst::io::fnv1a64_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("key set json roundtrip") {
  TempDir dir;
  const KeySet set(4, {PauliKey(4, 0b1100, 0), PauliKey(4, 0b0001, 0b1010)});
  qst::io::KeySetFile file{set, 0.8, true, 0.125};
  const std::string path = dir.file("keys.json");
  qst::io::write_file(path, qst::io::key_set_to_json(file).dump());

  const auto loaded = qst::io::load_key_set(path);
  CHECK(loaded.set.n == 4);
  CHECK(loaded.set.packed() == set.packed());
  CHECK(loaded.epsilon == 0.8);
  CHECK(loaded.certified);
  CHECK(loaded.beta_max == 0.125);
}

TEST_CASE("key set text form: comments, directive, roundtrip") {
  TempDir dir;
  const std::string path = dir.file("keys.txt");
  qst::io::write_file(path,
                      "# comment line\n"
                      "n=2\n"
                      "f  # trailing comment\n"
                      "3\n"
                      "\n"
                      "a\n");
  const auto loaded = qst::io::load_key_set(path);
  CHECK(loaded.set.n == 2);
  REQUIRE(loaded.set.size() == 3);
  CHECK(loaded.set.keys[0].packed() == 0xf);
  CHECK(loaded.set.keys[1].packed() == 0x3);
  CHECK(loaded.set.keys[2].packed() == 0xa);
  CHECK_FALSE(loaded.epsilon.has_value());

  const KeySet set(2, {PauliKey(2, 1, 2), PauliKey(2, 3, 3)});
  qst::io::KeySetFile out{set, std::nullopt, false, std::nullopt};
  const std::string path2 = dir.file("keys2.txt");
  qst::io::write_file(path2, qst::io::key_set_to_text(out));
  const auto back = qst::io::load_key_set(path2);
  CHECK(back.set.packed() == set.packed());
}

TEST_CASE("key set parse failures carry messages") {
  CHECK_THROWS_AS(qst::io::parse_key_set(""), std::runtime_error);
  CHECK_THROWS_AS(qst::io::parse_key_set("{\"n\": 2}"), std::runtime_error);
  CHECK_THROWS_AS(qst::io::parse_key_set("0f\n03\n"), std::runtime_error);
  CHECK_THROWS_AS(qst::io::parse_key_set("{\"n\": 2, \"keys\": [\"zz\"]}"),
                  std::runtime_error);
  CHECK_THROWS_AS(qst::io::load_key_set("/nonexistent/file"),
                  std::runtime_error);
}

TEST_CASE("epsilon report serializes with stable field order") {
  const auto certified = qst::sample_and_certify(2, 1.0, 77, 20);
  REQUIRE(certified.certified);
  const auto report = qst::verify_epsilon(*certified.set, 1.0, 10, 3);
  const std::string text = qst::io::epsilon_report_to_json(report).dump();
  CHECK(text.find("\"n\": 2") != std::string::npos);
  CHECK(text.find("\"threshold\": 0.5") != std::string::npos);
  CHECK(text.find("\"chain_holds\": true") != std::string::npos);
  // Field order is fixed by construction, so bytes are reproducible.
  CHECK(text == qst::io::epsilon_report_to_json(report).dump());
  CHECK(text.find("\"epsilon\"") < text.find("\"beta_max\""));
}

TEST_CASE("pure state json roundtrip preserves every bit") {
  TempDir dir;
  const auto psi = qst::random_pure_state(3, 424242);
  const std::string path = dir.file("state.json");
  qst::io::write_file(path, qst::io::pure_state_to_json(psi).dump());
  const auto back = qst::io::load_pure_state(path);
  CHECK(back.n == 3);
  CHECK(back.amplitudes == psi.amplitudes);  // 17 digits round-trip exactly

  CHECK_THROWS_AS(qst::io::parse_pure_state("{\"n\": 1, \"re\": [1], \"im\": []}"),
                  std::runtime_error);
}
