#include "qsuff/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qsuff {

namespace {

using nlohmann::json;

complexd parse_complex_entry(const json& entry, const char* where) {
  if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
    raise(ErrorKind::ParseError, std::string(where) + ": complex entries must be [re, im]");
  }
  const double re = entry[0].get<double>();
  const double im = entry[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) {
    raise(ErrorKind::ParseError, std::string(where) + ": non-finite entry");
  }
  return {re, im};
}

cmat parse_matrix(const json& rows, int expect_rows, int expect_cols, const char* where) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != expect_rows) {
    raise(ErrorKind::ParseError,
          std::string(where) + ": expected " + std::to_string(expect_rows) + " rows");
  }
  cmat m(expect_rows, expect_cols);
  for (int r = 0; r < expect_rows; ++r) {
    const json& row = rows[r];
    if (!row.is_array() || static_cast<int>(row.size()) != expect_cols) {
      raise(ErrorKind::ParseError,
            std::string(where) + ": expected " + std::to_string(expect_cols) + " columns");
    }
    for (int c = 0; c < expect_cols; ++c) m(r, c) = parse_complex_entry(row[c], where);
  }
  return m;
}

int get_positive_int(const json& doc, const char* field) {
  if (!doc.contains(field) || !doc[field].is_number_integer() || doc[field].get<int>() <= 0) {
    raise(ErrorKind::ParseError, std::string(field) + " must be a positive integer");
  }
  return doc[field].get<int>();
}

json parse_json_text(const std::string& text) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    raise(ErrorKind::ParseError, "malformed JSON");
  }
  return doc;
}

DensityMatrix state_from_json(const json& doc) {
  const int dim = get_positive_int(doc, "dim");
  if (!doc.contains("payload")) {
    raise(ErrorKind::ParseError, "state document needs a payload");
  }
  return DensityMatrix(parse_matrix(doc["payload"], dim, dim, "state payload"));
}

QuantumChannel channel_from_json(const json& doc) {
  const int dim_in = get_positive_int(doc, "dim_in");
  const int dim_out = get_positive_int(doc, "dim_out");
  if (!doc.contains("payload")) {
    raise(ErrorKind::ParseError, "channel document needs a payload");
  }
  const std::string representation = doc.value("representation", "kraus");
  if (representation == "kraus") {
    const json& list = doc["payload"];
    if (!list.is_array() || list.empty()) {
      raise(ErrorKind::ParseError, "kraus payload must be a nonempty list of matrices");
    }
    std::vector<cmat> kraus;
    kraus.reserve(list.size());
    for (const json& k : list) {
      kraus.push_back(parse_matrix(k, dim_out, dim_in, "kraus operator"));
    }
    return QuantumChannel(std::move(kraus));
  }
  if (representation == "choi") {
    const int side = dim_in * dim_out;
    const ChoiMatrix choi(dim_in, dim_out, parse_matrix(doc["payload"], side, side, "choi payload"),
                          1e-7);
    return QuantumChannel(choi_to_kraus(choi), 1e-7);
  }
  raise(ErrorKind::ParseError, "unknown channel representation '" + representation + "'");
}

}  // namespace

InputDocument parse_input_document(const std::string& text) {
  const json doc = parse_json_text(text);
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
    raise(ErrorKind::ParseError, "document needs a string 'kind' field");
  }
  const std::string kind = doc["kind"].get<std::string>();
  if (kind == "state") return state_from_json(doc);
  if (kind == "channel") return channel_from_json(doc);
  raise(ErrorKind::ParseError, "unknown document kind '" + kind + "'");
}

DensityMatrix parse_state(const std::string& text) {
  InputDocument doc = parse_input_document(text);
  if (!std::holds_alternative<DensityMatrix>(doc)) {
    raise(ErrorKind::ParseError, "expected a state document");
  }
  return std::get<DensityMatrix>(std::move(doc));
}

QuantumChannel parse_channel(const std::string& text) {
  InputDocument doc = parse_input_document(text);
  if (!std::holds_alternative<QuantumChannel>(doc)) {
    raise(ErrorKind::ParseError, "expected a channel document");
  }
  return std::get<QuantumChannel>(std::move(doc));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    raise(ErrorKind::ParseError, "cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

DensityMatrix read_state(const std::string& path) { return parse_state(read_file(path)); }

QuantumChannel read_channel(const std::string& path) { return parse_channel(read_file(path)); }

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char b : bytes) {
    hash ^= b;
    hash *= 0x100000001b3ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

JsonWriter& JsonWriter::begin_object() {
  separate();
  out_ += '{';
  needs_comma_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += '}';
  needs_comma_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separate();
  out_ += '[';
  needs_comma_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += ']';
  needs_comma_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& name) {
  separate();
  out_ += '"';
  out_ += name;
  out_ += "\":";
  after_key_ = true;
  return *this;
}

void JsonWriter::separate() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (!needs_comma_.empty()) {
    if (needs_comma_.back()) out_ += ',';
    needs_comma_.back() = true;
  }
}

JsonWriter& JsonWriter::value(double x) {
  separate();
  if (std::isinf(x)) {
    out_ += x > 0 ? "\"inf\"" : "\"-inf\"";
  } else {
    out_ += format_double(x);
  }
  return *this;
}

JsonWriter& JsonWriter::value(int x) {
  separate();
  out_ += std::to_string(x);
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& s) {
  separate();
  out_ += '"';
  for (char c : s) {
    if (c == '"' || c == '\\') out_ += '\\';
    out_ += c;
  }
  out_ += '"';
  return *this;
}

JsonWriter& JsonWriter::value(const char* s) { return value(std::string(s)); }

JsonWriter& JsonWriter::value_complex(complexd z) {
  begin_array();
  value(z.real());
  value(z.imag());
  return end_array();
}

JsonWriter& JsonWriter::value_matrix(const cmat& m) {
  begin_array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    begin_array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) value_complex(m(r, c));
    end_array();
  }
  return end_array();
}

std::string state_to_json(const DensityMatrix& rho) {
  JsonWriter w;
  w.begin_object();
  w.key("kind").value("state");
  w.key("dim").value(rho.dim());
  w.key("payload").value_matrix(rho.matrix());
  w.end_object();
  return w.str() + "\n";
}

std::string kraus_channel_to_json(const std::vector<cmat>& kraus, int dim_in, int dim_out) {
  JsonWriter w;
  w.begin_object();
  w.key("kind").value("channel");
  w.key("dim_in").value(dim_in);
  w.key("dim_out").value(dim_out);
  w.key("representation").value("kraus");
  w.key("payload").begin_array();
  for (const cmat& k : kraus) w.value_matrix(k);
  w.end_array();
  w.end_object();
  return w.str() + "\n";
}

std::string choi_channel_to_json(const ChoiMatrix& choi) {
  JsonWriter w;
  w.begin_object();
  w.key("kind").value("channel");
  w.key("dim_in").value(choi.dim_in());
  w.key("dim_out").value(choi.dim_out());
  w.key("representation").value("choi");
  w.key("payload").value_matrix(choi.matrix());
  w.end_object();
  return w.str() + "\n";
}

}  // namespace qsuff
