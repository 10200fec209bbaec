#include "qst/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qst::io {

Json Json::null() { return Json(); }

Json Json::boolean(bool v) {
  Json j;
  j.kind_ = Kind::boolean;
  j.bool_ = v;
  return j;
}

Json Json::integer(std::int64_t v) {
  Json j;
  j.kind_ = Kind::integer;
  j.int_ = v;
  return j;
}

Json Json::number(double v) {
  Json j;
  j.kind_ = Kind::number;
  j.num_ = v;
  return j;
}

Json Json::string(std::string v) {
  Json j;
  j.kind_ = Kind::string;
  j.str_ = std::move(v);
  return j;
}

Json Json::array() {
  Json j;
  j.kind_ = Kind::array;
  return j;
}

Json Json::object() {
  Json j;
  j.kind_ = Kind::object;
  return j;
}

Json& Json::push(Json v) {
  if (kind_ != Kind::array) {
    throw std::logic_error("Json::push on non-array");
  }
  items_.push_back(std::move(v));
  return *this;
}

Json& Json::set(std::string key, Json v) {
  if (kind_ != Kind::object) {
    throw std::logic_error("Json::set on non-object");
  }
  fields_.emplace_back(std::move(key), std::move(v));
  return *this;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void write_escaped(std::string& out, std::string_view s) {
  out.push_back('"');
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
}

void write_newline_indent(std::string& out, int indent, int depth) {
  if (indent > 0) {
    out.push_back('\n');
    out.append(static_cast<std::size_t>(indent) * depth, ' ');
  }
}

}  // namespace

void Json::write(std::string& out, int indent, int depth) const {
  switch (kind_) {
    case Kind::null:
      out += "null";
      break;
    case Kind::boolean:
      out += bool_ ? "true" : "false";
      break;
    case Kind::integer:
      out += std::to_string(int_);
      break;
    case Kind::number:
      out += format_double(num_);
      break;
    case Kind::string:
      write_escaped(out, str_);
      break;
    case Kind::array: {
      if (items_.empty()) {
        out += "[]";
        break;
      }
      out.push_back('[');
      for (std::size_t i = 0; i < items_.size(); ++i) {
        if (i != 0) {
          out.push_back(',');
        }
        write_newline_indent(out, indent, depth + 1);
        items_[i].write(out, indent, depth + 1);
      }
      write_newline_indent(out, indent, depth);
      out.push_back(']');
      break;
    }
    case Kind::object: {
      if (fields_.empty()) {
        out += "{}";
        break;
      }
      out.push_back('{');
      for (std::size_t i = 0; i < fields_.size(); ++i) {
        if (i != 0) {
          out.push_back(',');
        }
        write_newline_indent(out, indent, depth + 1);
        write_escaped(out, fields_[i].first);
        out += indent > 0 ? ": " : ":";
        fields_[i].second.write(out, indent, depth + 1);
      }
      write_newline_indent(out, indent, depth);
      out.push_back('}');
      break;
    }
  }
}

std::string Json::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  out.push_back('\n');
  return out;
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write file: " + path);
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) {
    throw std::runtime_error("short write: " + path);
  }
}

std::string file_hash(const std::string& path) {
  return fnv1a64_hex(read_file(path));
}

Json key_set_to_json(const KeySetFile& file) {
  Json j = Json::object();
  j.set("n", Json::integer(file.set.n));
  j.set("epsilon", file.epsilon ? Json::number(*file.epsilon) : Json::null());
  j.set("certified", Json::boolean(file.certified));
  j.set("beta_max", file.beta_max ? Json::number(*file.beta_max) : Json::null());
  Json keys = Json::array();
  for (const auto& k : file.set.keys) {
    keys.push(Json::string(k.to_hex()));
  }
  j.set("keys", std::move(keys));
  return j;
}

std::string key_set_to_text(const KeySetFile& file) {
  std::string out;
  out += "# qstlab key set";
  if (file.epsilon) {
    out += " (epsilon " + format_double(*file.epsilon) + ")";
  }
  out += "\nn=" + std::to_string(file.set.n) + "\n";
  for (const auto& k : file.set.keys) {
    out += k.to_hex();
    out.push_back('\n');
  }
  return out;
}

namespace {

KeySetFile parse_key_set_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  std::vector<PauliKey> keys;
  for (const auto& item : j.at("keys")) {
    keys.push_back(PauliKey::from_hex(n, item.get<std::string>()));
  }
  KeySetFile out{KeySet(n, std::move(keys)), std::nullopt, false, std::nullopt};
  if (j.contains("epsilon") && !j.at("epsilon").is_null()) {
    out.epsilon = j.at("epsilon").get<double>();
  }
  if (j.contains("certified")) {
    out.certified = j.at("certified").get<bool>();
  }
  if (j.contains("beta_max") && !j.at("beta_max").is_null()) {
    out.beta_max = j.at("beta_max").get<double>();
  }
  return out;
}

KeySetFile parse_key_set_text(std::string_view contents) {
  std::istringstream in{std::string(contents)};
  std::string line;
  int n = -1;
  std::vector<PauliKey> keys;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' ||
                             line.back() == '\r')) {
      line.pop_back();
    }
    std::size_t start = 0;
    while (start < line.size() && (line[start] == ' ' || line[start] == '\t')) {
      ++start;
    }
    line.erase(0, start);
    if (line.empty()) {
      continue;
    }
    if (n < 0) {
      if (line.rfind("n=", 0) != 0) {
        throw std::runtime_error("key set text: first entry must be n=<int>");
      }
      n = std::stoi(line.substr(2));
      continue;
    }
    keys.push_back(PauliKey::from_hex(n, line));
  }
  if (n < 0 || keys.empty()) {
    throw std::runtime_error("key set text: no keys");
  }
  return KeySetFile{KeySet(n, std::move(keys)), std::nullopt, false,
                    std::nullopt};
}

}  // namespace

KeySetFile parse_key_set(std::string_view contents) {
  const auto first = contents.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    throw std::runtime_error("key set file: empty");
  }
  try {
    if (contents[first] == '{') {
      return parse_key_set_json(nlohmann::json::parse(contents));
    }
    return parse_key_set_text(contents);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("key set file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("key set file: ") + e.what());
  }
}

KeySetFile load_key_set(const std::string& path) {
  return parse_key_set(read_file(path));
}

Json pure_state_to_json(const PureState& state) {
  Json j = Json::object();
  j.set("n", Json::integer(state.n));
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i) {
    re.push(Json::number(state.amplitudes[i].real()));
    im.push(Json::number(state.amplitudes[i].imag()));
  }
  j.set("re", std::move(re));
  j.set("im", std::move(im));
  return j;
}

PureState parse_pure_state(std::string_view contents) {
  try {
    const auto j = nlohmann::json::parse(contents);
    const int n = j.at("n").get<int>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (re.size() != im.size()) {
      throw std::runtime_error("state file: re/im size mismatch");
    }
    Eigen::VectorXcd amps(static_cast<Eigen::Index>(re.size()));
    for (std::size_t i = 0; i < re.size(); ++i) {
      amps[static_cast<Eigen::Index>(i)] =
          Complex{re[i].get<double>(), im[i].get<double>()};
    }
    return PureState(n, std::move(amps));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("state file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("state file: ") + e.what());
  }
}

PureState load_pure_state(const std::string& path) {
  return parse_pure_state(read_file(path));
}

Json epsilon_report_to_json(const EpsilonReport& report) {
  Json j = Json::object();
  j.set("n", Json::integer(report.n));
  j.set("epsilon", Json::number(report.epsilon));
  j.set("threshold", Json::number(report.threshold));
  j.set("beta_max", Json::number(report.beta_max));
  j.set("epsilon_implied", Json::number(report.epsilon_implied));
  j.set("analytic_certified", Json::boolean(report.analytic_certified));
  j.set("frobenius_sq_bound", Json::number(report.frobenius_sq_bound));
  j.set("trials", Json::integer(report.trials));
  j.set("max_trace_distance", Json::number(report.max_trace_distance));
  j.set("max_frobenius_sq", Json::number(report.max_frobenius_sq));
  j.set("chain_holds", Json::boolean(report.chain_holds));
  j.set("frobenius_concentration_holds",
        Json::boolean(report.frobenius_concentration_holds));
  j.set("monte_carlo_within_epsilon",
        Json::boolean(report.monte_carlo_within_epsilon));
  j.set("pass", Json::boolean(report.pass));
  return j;
}

Json protocol_security_to_json(const ProtocolSecurityReport& report) {
  Json j = Json::object();
  j.set("parties", Json::integer(report.parties));
  j.set("n", Json::integer(report.n));
  j.set("epsilon", Json::number(report.epsilon));
  j.set("trials", Json::integer(report.trials));
  j.set("seed", Json::integer(static_cast<std::int64_t>(report.seed)));
  Json hops = Json::array();
  for (const auto& hop : report.hops) {
    Json h = Json::object();
    h.set("hop", Json::integer(hop.hop));
    h.set("beta_max", Json::number(hop.beta_max));
    h.set("threshold", Json::number(hop.threshold));
    h.set("certified", Json::boolean(hop.certified));
    h.set("cumulative_beta_max", Json::number(hop.cumulative_beta_max));
    h.set("measured_max_distance", Json::number(hop.measured_max_distance));
    hops.push(std::move(h));
  }
  j.set("hops", std::move(hops));
  j.set("composed_beta_max", Json::number(report.composed_beta_max));
  j.set("composed_max_distance", Json::number(report.composed_max_distance));
  j.set("idealized_m_fold_beta_max",
        Json::number(report.idealized_m_fold_beta_max));
  j.set("idealized_m_fold_max_distance",
        Json::number(report.idealized_m_fold_max_distance));
  j.set("chi_report",
        chi_report_to_json(report.chi, report.chi_bound, report.chi_base,
                           1 << report.n, report.epsilon,
                           report.chi <= report.chi_bound + 1e-9));
  j.set("chi_bound_small_de", Json::boolean(report.chi_bound_small_de));
  j.set("pass", Json::boolean(report.pass));
  j.set("caveat", Json::string(report.caveat));
  return j;
}

Json chi_report_to_json(double chi, double bound, LogBase base, int d,
                        double epsilon, bool pass) {
  Json j = Json::object();
  j.set("chi", Json::number(chi));
  j.set("bound", Json::number(bound));
  j.set("base", Json::string(base == LogBase::two ? "2" : "e"));
  j.set("d", Json::integer(d));
  j.set("epsilon", Json::number(epsilon));
  j.set("pass", Json::boolean(pass));
  if (base == LogBase::e) {
    // log(1 + d*eps) < d*eps holds in natural log only; report it there.
    j.set("bound_lt_de", Json::boolean(bound < d * epsilon));
  }
  return j;
}

Json transcript_to_json(const Transcript& transcript,
                        const ProtocolConfig& config,
                        const ProtocolSecurityReport& security,
                        const std::string& state_source) {
  Json j = Json::object();
  Json cfg = Json::object();
  cfg.set("parties", Json::integer(config.parties));
  cfg.set("n", Json::integer(config.n));
  cfg.set("epsilon", Json::number(config.epsilon));
  cfg.set("seed", Json::integer(static_cast<std::int64_t>(config.seed)));
  cfg.set("state_source", Json::string(state_source));
  Json provenance = Json::array();
  for (const auto& p : config.hop_provenance) {
    provenance.push(Json::string(p));
  }
  cfg.set("key_provenance", std::move(provenance));
  j.set("config", std::move(cfg));

  Json hops = Json::array();
  for (const auto& hop : transcript.hops) {
    Json h = Json::object();
    h.set("hop", Json::integer(hop.hop));
    h.set("from", Json::integer(hop.sender));
    h.set("to", Json::integer(hop.receiver));
    h.set("captured", Json::boolean(hop.captured));
    if (hop.ciphertext) {
      h.set("state", pure_state_to_json(*hop.ciphertext));
    }
    hops.push(std::move(h));
  }
  j.set("hops", std::move(hops));
  j.set("fidelity", Json::number(transcript.fidelity));
  j.set("decode_ok", Json::boolean(transcript.decode_ok));
  j.set("no_cloning_idealized", Json::boolean(transcript.no_cloning_idealized));
  j.set("security", protocol_security_to_json(security));
  return j;
}

}  // namespace qst::io
