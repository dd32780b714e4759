#pragma once
// Published per-split bucket counts and a generator for a manifest that
// realizes them exactly.

#include <array>
#include <cstddef>
#include <string>

#include <nlohmann/json.hpp>

namespace table1 {

struct SplitCounts {
    const char* split;
    std::array<std::size_t, 5> schema;  ///< table row order
    std::array<std::size_t, 3> difficulty;
    std::array<std::size_t, 6> oplen;   ///< <=3, 4, 5, 6, 7, >=8
    std::size_t total;
};

inline constexpr std::array<const char*, 5> kSchemaNames{"ProportionalDistribution", "RatePercentage", "ChangeRevert",
                                                         "DifferenceAnalysis", "SumSplit"};
inline constexpr std::array<const char*, 3> kDifficultyNames{"Easy", "Medium", "Hard"};

inline constexpr SplitCounts kTrain{"train", {4265, 2771, 1635, 905, 854}, {1400, 7602, 1428},
                                    {1834, 2490, 2693, 1612, 1002, 799}, 10430};
inline constexpr SplitCounts kTest{"test", {245, 265, 119, 141, 172}, {208, 680, 54}, {163, 279, 296, 115, 56, 33}, 942};

template <std::size_t N>
std::size_t bucket_of(const std::array<std::size_t, N>& counts, std::size_t index) {
    for (std::size_t b = 0; b < N; ++b) {
        if (index < counts[b]) return b;
        index -= counts[b];
    }
    return N - 1;
}

/// Program with exactly `ops` statements: one bar plus braces over it.
inline std::string program_with(std::size_t ops) {
    std::string s = "HL \"unit\" 0 1 1\n";
    for (std::size_t i = 1; i < ops; ++i) s += "HB \"p" + std::to_string(i) + " ?\" N 0 0 " + std::to_string(1 + i % 2) + "\n";
    return s;
}

/// Buckets are assigned with different strides so the three breakdowns are
/// not trivially aligned with one another.
inline std::string manifest(const SplitCounts& c) {
    static constexpr std::array<std::size_t, 6> kOps{3, 4, 5, 6, 7, 9};
    std::string out;
    for (std::size_t i = 0; i < c.total; ++i) {
        const std::size_t schema = bucket_of(c.schema, i);
        const std::size_t diff = bucket_of(c.difficulty, (i * 7919) % c.total);
        const std::size_t ops = kOps[bucket_of(c.oplen, (i * 104729) % c.total)];
        nlohmann::ordered_json rec{{"id", std::string(c.split) + "-" + std::to_string(i)},
                                   {"problem", "generated"},
                                   {"dsl", program_with(ops)},
                                   {"givens", nlohmann::json::array()},
                                   {"schema", kSchemaNames[schema]},
                                   {"difficulty", kDifficultyNames[diff]},
                                   {"split", c.split}};
        out += rec.dump() + "\n";
    }
    return out;
}

}  // namespace table1
