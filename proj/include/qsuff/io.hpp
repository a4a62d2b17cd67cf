#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qsuff/quantum.hpp"

namespace qsuff {

/// Parsed input file: either a state or a channel document.
using InputDocument = std::variant<DensityMatrix, QuantumChannel>;

InputDocument parse_input_document(const std::string& text);
DensityMatrix parse_state(const std::string& text);
QuantumChannel parse_channel(const std::string& text);

DensityMatrix read_state(const std::string& path);
QuantumChannel read_channel(const std::string& path);
std::string read_file(const std::string& path);

std::string state_to_json(const DensityMatrix& rho);
std::string kraus_channel_to_json(const std::vector<cmat>& kraus, int dim_in, int dim_out);
std::string choi_channel_to_json(const ChoiMatrix& choi);

/// %.17g with infinities rendered as "inf"/"-inf".
std::string format_double(double x);

/// FNV-1a 64-bit content hash, rendered as 0x-prefixed hex.
std::string fnv1a64_hex(const std::string& bytes);

/// Streaming JSON writer with deterministic formatting: fixed key order is
/// the caller's responsibility, doubles are %.17g, infinities become the
/// strings "inf"/"-inf".
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& name);
  JsonWriter& value(double x);
  JsonWriter& value(int x);
  JsonWriter& value(const std::string& s);
  JsonWriter& value(const char* s);
  JsonWriter& value_complex(complexd z);  // [re, im]
  JsonWriter& value_matrix(const cmat& m);

  const std::string& str() const { return out_; }

 private:
  void separate();
  std::string out_;
  std::vector<bool> needs_comma_;
  bool after_key_ = false;
};

}  // namespace qsuff
