#include "mpfock/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace mpfock {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void write_indent(std::ostream& out, int n) {
  for (int i = 0; i < n; ++i) out << ' ';
}

void write_value(std::ostream& out, const Json& j, int indent) {
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        write_indent(out, indent + 2);
        out << Json(it.key()).dump() << ": ";
        write_value(out, it.value(), indent + 2);
        if (i + 1 < j.size()) out << ',';
        out << '\n';
      }
      write_indent(out, indent);
      out << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        write_indent(out, indent + 2);
        write_value(out, j[i], indent + 2);
        if (i + 1 < j.size()) out << ',';
        out << '\n';
      }
      write_indent(out, indent);
      out << ']';
      return;
    }
    case Json::value_t::number_float:
      out << format_double(j.get<double>());
      return;
    default:
      out << j.dump();
      return;
  }
}

}  // namespace

void write_json(std::ostream& out, const Json& j, int indent) {
  write_value(out, j, indent);
  out << '\n';
}

std::string dump_json(const Json& j) {
  std::ostringstream ss;
  write_json(ss, j);
  return ss.str();
}

Json truncation_echo(const TruncationConfig& config, double tail_budget) {
  Json t;
  t["n_max"] = config.n_max;
  t["tol_psd"] = config.tol_psd;
  t["tol_trace"] = config.tol_trace;
  t["tail_budget"] = tail_budget;
  return t;
}

Json envelope(const Json& input_echo, const Json& truncation, Json payload) {
  Json e;
  e["tool"] = "mpfock";
  e["version"] = MPFOCK_VERSION;
  Json conv;
  conv["quadrature"] = "x = adag + a, p = i(adag - a)";
  conv["commutator"] = "[x, p] = 2i";
  conv["vacuum_variance"] = 1.0;
  conv["wigner_normalization"] = "integral W dx dp = 1";
  conv["entropy_units"] = "nats";
  e["convention"] = conv;
  e["truncation"] = truncation;
  e["input"] = input_echo;
  e["payload"] = std::move(payload);
  return e;
}

}  // namespace mpfock
