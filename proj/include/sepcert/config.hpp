#ifndef SEPCERT_CONFIG_HPP
#define SEPCERT_CONFIG_HPP

#include "sepcert/rational.hpp"

#include <cstdint>
#include <optional>

namespace sepcert {

/// Concrete stand-ins for the constants the class-membership bounds leave
/// symbolic: ell is chosen as ceil(a * n^(eps/5)) and the expansion bound
/// is f(r) = floor(c_f * r^(1.25/eps)).
struct ClassConstants {
    Rational a = 1;
    Rational c_f = 1;
};

/// Run-wide knobs. Serialized alongside every certificate so runs are
/// reproducible from the output alone.
struct Config {
    ClassConstants constants;
    long long column_cap_factor = 50;           // column-generation cap = factor * n
    unsigned long long dp_state_budget = 1000000000ULL;
    std::uint64_t seed = 1;
    std::optional<int> small_cap;               // override for the pattern-size threshold
    std::optional<long long> large_threshold;   // override for the large-subgraph regime bound
    int audit_samples = 100;
    int audit_max_size = 12;

    void validate() const {
        require(constants.a > 0 && constants.c_f > 0, "config: class constants must be positive");
        require(column_cap_factor > 0, "config: column cap must be positive");
        require(dp_state_budget > 0, "config: state budget must be positive");
        require(audit_samples > 0 && audit_max_size > 0, "config: audit settings must be positive");
        if (small_cap) require(*small_cap >= 1, "config: small-cap must be >= 1");
        if (large_threshold) require(*large_threshold >= 1, "config: large-threshold must be >= 1");
    }
};

}  // namespace sepcert

#endif
