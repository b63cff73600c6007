#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace twistor {

/// One verified claim: an identity or bound checked over sampled inputs.
/// paper_anchor states the formula being checked, in plain ASCII.
/// status is "pass", "fail", or "info" (recorded value, not a gate).
struct ClaimReport {
  std::string claim_id;
  std::string paper_anchor;
  std::string params;
  int trials = 0;
  double max_residual = 0.0;
  std::string extra;
  std::string status;
};

struct SuiteConfig {
  std::string suite = "all";
  int p = 2;
  int q = 1;
  int trials = 100;
  std::uint64_t seed = 42;
  double fd_step = 1e-3;
  double tol = 1e-8;     // gate for exact (roundoff-limited) identities
  double tol_fd = 5e-4;  // gate for finite-difference residuals
  std::string format = "text";
  std::string out;  // output path; empty writes to stdout
};

/// Shortest round-trip decimal rendering; byte-stable across runs.
inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf);
}

inline std::string format_sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return std::string(buf);
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (const char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

/// Compact JSON with a fixed key order; identical configs and claim lists
/// produce identical bytes.
inline std::string render_json(const SuiteConfig& cfg, const std::vector<ClaimReport>& claims) {
  std::string out = "{\"version\":\"1.0\",\"config\":{";
  out += "\"suite\":\"" + json_escape(cfg.suite) + "\"";
  out += ",\"p\":" + std::to_string(cfg.p);
  out += ",\"q\":" + std::to_string(cfg.q);
  out += ",\"trials\":" + std::to_string(cfg.trials);
  out += ",\"seed\":" + std::to_string(cfg.seed);
  out += ",\"fd_step\":" + format_double(cfg.fd_step);
  out += ",\"tol\":" + format_double(cfg.tol);
  out += ",\"tol_fd\":" + format_double(cfg.tol_fd);
  out += "},\"claims\":[";
  bool first = true;
  for (const ClaimReport& c : claims) {
    if (!first) out += ",";
    first = false;
    out += "{\"claim_id\":\"" + json_escape(c.claim_id) + "\"";
    out += ",\"paper_anchor\":\"" + json_escape(c.paper_anchor) + "\"";
    out += ",\"params\":\"" + json_escape(c.params) + "\"";
    out += ",\"trials\":" + std::to_string(c.trials);
    out += ",\"max_residual\":" + format_double(c.max_residual);
    out += ",\"extra\":\"" + json_escape(c.extra) + "\"";
    out += ",\"status\":\"" + json_escape(c.status) + "\"}";
  }
  out += "]}\n";
  return out;
}

namespace detail {

inline std::string pad(const std::string& s, std::size_t width) {
  if (s.size() >= width) return s + "  ";
  return s + std::string(width - s.size() + 2, ' ');
}

}  // namespace detail

inline std::string render_text(const SuiteConfig& cfg, const std::vector<ClaimReport>& claims) {
  constexpr std::size_t w_id = 40, w_anchor = 52, w_params = 30, w_trials = 6, w_res = 10;
  std::string out;
  out += "suite=" + cfg.suite + " p=" + std::to_string(cfg.p) + " q=" + std::to_string(cfg.q) +
         " trials=" + std::to_string(cfg.trials) + " seed=" + std::to_string(cfg.seed) +
         " fd_step=" + format_double(cfg.fd_step) + " tol=" + format_double(cfg.tol) +
         " tol_fd=" + format_double(cfg.tol_fd) + "\n";
  out += detail::pad("claim", w_id) + detail::pad("paper_anchor", w_anchor) +
         detail::pad("params", w_params) + detail::pad("trials", w_trials) +
         detail::pad("residual", w_res) + detail::pad("status", 6) + "extra\n";
  out += std::string(w_id + w_anchor + w_params + w_trials + w_res + 6 + 12 + 5, '-') + "\n";
  int pass = 0, fail = 0, info = 0;
  for (const ClaimReport& c : claims) {
    out += detail::pad(c.claim_id, w_id) + detail::pad(c.paper_anchor, w_anchor) +
           detail::pad(c.params, w_params) + detail::pad(std::to_string(c.trials), w_trials) +
           detail::pad(format_sci(c.max_residual), w_res) + detail::pad(c.status, 6) + c.extra +
           "\n";
    if (c.status == "pass") ++pass;
    else if (c.status == "fail") ++fail;
    else ++info;
  }
  out += "claims=" + std::to_string(claims.size()) + " pass=" + std::to_string(pass) +
         " fail=" + std::to_string(fail) + " info=" + std::to_string(info) + "\n";
  return out;
}

inline std::string render_report(const SuiteConfig& cfg, const std::vector<ClaimReport>& claims) {
  if (cfg.format == "json") return render_json(cfg, claims);
  return render_text(cfg, claims);
}

inline bool any_failed(const std::vector<ClaimReport>& claims) {
  for (const ClaimReport& c : claims)
    if (c.status == "fail") return true;
  return false;
}

}  // namespace twistor
