#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "sensetag/errors.hpp"

namespace sensetag {

// One choice per slot; a configuration is a choice index per slot. The full
// space (product of choice counts) is never materialized.
struct ConfigSpace {
    std::vector<int> choice_counts;

    std::size_t slot_count() const { return choice_counts.size(); }

    // Product of choice counts, saturating at max.
    std::uint64_t size(std::uint64_t cap = UINT64_MAX) const {
        std::uint64_t total = 1;
        for (int c : choice_counts) {
            if (c <= 0) throw ValidationError("slot with no choices");
            if (total > cap / static_cast<std::uint64_t>(c)) return cap;
            total *= static_cast<std::uint64_t>(c);
        }
        return total;
    }
};

using Configuration = std::vector<int>;
using EnergyFn = std::function<double(const Configuration&)>;

// Constant-factor cooling: temperature decays by `decay` per level, each
// level runs `trials_per_level` single-slot perturbations, and the search
// stops on the first level that accepts no change (or at max_levels).
struct Schedule {
    double initial_temperature = 1.0;
    double decay = 0.9;
    int trials_per_level = 0;  // 0 = 100 x slot count
    int max_levels = 200;
};

struct LevelTrace {
    double temperature = 0.0;
    int accepted = 0;
    double energy = 0.0;  // current energy at level end
};

struct AnnealResult {
    Configuration best_config;
    double best_energy = 0.0;
    std::vector<LevelTrace> trace;
    std::vector<Configuration> restart_finals;
    std::vector<double> restart_energies;
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic, platform-independent RNG stream per (seed, restart).
class SplitMix {
public:
    explicit SplitMix(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }
    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    // uniform in [0, 1)
    double real() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

}  // namespace detail

// Simulated annealing over a discrete choice space. Every restart starts
// from the all-first-choices configuration; each trial re-picks one random
// slot, accepting improvements always and worsenings with probability
// exp(-delta / temperature). Fully deterministic given (seed, restarts).
inline AnnealResult anneal(const ConfigSpace& space, const EnergyFn& energy,
                           const Schedule& schedule, std::uint64_t seed,
                           int restarts = 1) {
    for (int c : space.choice_counts)
        if (c <= 0) throw ValidationError("slot with no choices");
    if (restarts < 1) throw ValidationError("restarts must be >= 1");

    const std::size_t slots = space.slot_count();
    AnnealResult result;
    result.best_config.assign(slots, 0);
    result.best_energy = energy(result.best_config);

    if (slots == 0 ||
        std::all_of(space.choice_counts.begin(), space.choice_counts.end(),
                    [](int c) { return c == 1; })) {
        // nothing to search
        result.restart_finals.assign(restarts, result.best_config);
        result.restart_energies.assign(restarts, result.best_energy);
        return result;
    }

    const int trials = schedule.trials_per_level > 0
                           ? schedule.trials_per_level
                           : 100 * static_cast<int>(slots);

    for (int restart = 0; restart < restarts; ++restart) {
        detail::SplitMix rng(detail::mix64(
            seed ^ detail::mix64(static_cast<std::uint64_t>(restart) + 1)));
        Configuration current(slots, 0);
        double current_energy = energy(current);
        if (current_energy < result.best_energy) {
            result.best_energy = current_energy;
            result.best_config = current;
        }
        double temperature = schedule.initial_temperature;
        for (int level = 0; level < schedule.max_levels; ++level) {
            int accepted = 0;
            for (int trial = 0; trial < trials; ++trial) {
                auto slot = static_cast<std::size_t>(rng.below(slots));
                int choices = space.choice_counts[slot];
                if (choices == 1) continue;
                int alt = static_cast<int>(
                    rng.below(static_cast<std::uint64_t>(choices - 1)));
                if (alt >= current[slot]) ++alt;  // pick among alternatives
                int previous = current[slot];
                current[slot] = alt;
                double proposed = energy(current);
                double delta = proposed - current_energy;
                bool accept = delta <= 0.0 ||
                              rng.real() < std::exp(-delta / temperature);
                if (accept) {
                    ++accepted;
                    current_energy = proposed;
                    if (current_energy < result.best_energy) {
                        result.best_energy = current_energy;
                        result.best_config = current;
                    }
                } else {
                    current[slot] = previous;
                }
            }
            result.trace.push_back({temperature, accepted, current_energy});
            if (accepted == 0) break;
            temperature *= schedule.decay;
        }
        result.restart_finals.push_back(current);
        result.restart_energies.push_back(current_energy);
    }
    return result;
}

// Exact global minimum by enumeration; first-found under lexicographic order
// wins ties. Oracle counterpart of anneal() for small spaces.
inline std::pair<Configuration, double> exhaustive_min(
    const ConfigSpace& space, const EnergyFn& energy,
    std::uint64_t cap = 1000000) {
    if (space.size(cap + 1) > cap)
        throw ValidationError("configuration space exceeds enumeration cap");
    Configuration current(space.slot_count(), 0);
    Configuration best = current;
    double best_energy = energy(current);
    while (true) {
        // lexicographic increment
        std::size_t i = space.slot_count();
        while (i > 0) {
            --i;
            if (++current[i] < space.choice_counts[i]) break;
            current[i] = 0;
            if (i == 0) return {best, best_energy};
        }
        if (space.slot_count() == 0) return {best, best_energy};
        double e = energy(current);
        if (e < best_energy) {
            best_energy = e;
            best = current;
        }
    }
}

}  // namespace sensetag
