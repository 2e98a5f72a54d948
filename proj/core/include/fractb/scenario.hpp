#pragma once

#include <span>
#include <string>
#include <string_view>

#include "fractb/focp.hpp"
#include "fractb/tb_model.hpp"

namespace fractb {

// Fully resolved run description. alpha and the time grid live inside focp
// and apply to every command, not just the control solve. The initial state
// is concrete here; the "equilibrium" sentinel is expanded during loading.
struct Scenario {
  ModelParams params;
  StateVec x0;
  FocpConfig focp;
  std::string out_dir = ".";

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Keys understood by the loader, one `key = value` per line, `#` comments:
//   model:   Lambda beta mu k delta epsilon gamma alpha1 alpha2
//   state:   x0 (only value: equilibrium) or all of S0 L0 I0 T0
//   grid:    alpha tf steps
//   control: B rho u_max C theta tol max_iter
//   output:  out
// Omitted keys fall back to the baseline scenario; the default initial state
// is the endemic equilibrium of the resolved model parameters.

// Parses `text` (config-file syntax), then applies `overrides` (same
// `key=value` syntax, in order). `source` labels ParseError messages.
// Throws ParseError (with line info), UnknownKey, or InvariantViolation.
Scenario parse_scenario(std::string_view text, std::span<const std::string> overrides,
                        std::string_view source = "<config>");

// parse_scenario over the contents of `path`; empty path means no file.
Scenario load_scenario(const std::string& path, std::span<const std::string> overrides);

// Canonical `key = value` listing of a resolved scenario, loadable by
// parse_scenario. Doubles use shortest round-trip formatting, so
// parse(serialize(s)) == s exactly.
std::string serialize_scenario(const Scenario& s);

}  // namespace fractb
