#pragma once

#include <array>
#include <map>
#include <span>
#include <string>

#include <json.hpp>

#include "bardsl/corpus/manifest.hpp"

namespace bardsl::corpus {

/// Operation-length buckets: <=3, 4, 5, 6, 7, >=8.
inline constexpr std::size_t kOpLenBuckets = 6;
std::size_t oplen_bucket(std::size_t length);
const char* oplen_bucket_name(std::size_t bucket);

struct SplitStats {
    std::map<verify::Schema, std::size_t> by_schema;
    std::map<verify::Difficulty, std::size_t> by_difficulty;
    std::array<std::size_t, kOpLenBuckets> by_oplen{};
    std::size_t total = 0;

    void add(verify::Schema schema, verify::Difficulty difficulty, std::size_t op_length);
    void merge(const SplitStats& other);
    /// True when every breakdown sums to `total`.
    [[nodiscard]] bool consistent() const;
    bool operator==(const SplitStats&) const = default;
};

struct CorpusStats {
    SplitStats train;
    SplitStats test;

    [[nodiscard]] const SplitStats& of(Split s) const { return s == Split::Train ? train : test; }
    SplitStats& of(Split s) { return s == Split::Train ? train : test; }
    void merge(const CorpusStats& other);
    bool operator==(const CorpusStats&) const = default;
};

CorpusStats stats(std::span<const Instance> instances);

/// Aligned two-column (Train/Test) table in corpus-statistics layout.
std::string stats_table(const CorpusStats& s);
nlohmann::ordered_json to_json(const CorpusStats& s);

}  // namespace bardsl::corpus
