// SPDX-License-Identifier: Apache-2.0
//
// Plain-text scenario configuration: one `key = value` pair per line, dotted
// hierarchical keys, `#` comments. Unknown keys and malformed values are
// rejected with the offending key path. Defaults reproduce the reference
// scenario (BS at (0,10), RIS at (40,10), user at (80,10), 10 dBm transmit,
// -94 dBm noise, 5 dBi gains, unit Rician factors, the standard angle sets).

#ifndef RISMIMO_CONFIG_HPP
#define RISMIMO_CONFIG_HPP

#include <string>

#include "rismimo/channel_model.hpp"

namespace rismimo {

/// Optimizer knobs carried next to the scenario (all optional in the file).
struct OptimizerConfig {
    double epsilon = 1e-5;
    int restarts = 3;
    int max_outer = 100;
    double phase_step = 0.1;
};

struct Scenario {
    ScenarioConfig channel;
    OptimizerConfig opt;
};

/// Parse a configuration file; throws ConfigError naming the key on any
/// malformed or unknown entry.
Scenario load_scenario_file(const std::string& path);

/// Parse from an in-memory string (tests).
Scenario load_scenario_text(const std::string& text);

/// The default configuration rendered as a config file.
std::string default_scenario_text();

}  // namespace rismimo

#endif
