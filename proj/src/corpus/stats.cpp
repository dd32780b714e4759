#include "bardsl/corpus/stats.hpp"

#include <iomanip>
#include <numeric>
#include <sstream>

namespace bardsl::corpus {

std::size_t oplen_bucket(std::size_t length) {
    if (length <= 3) return 0;
    if (length >= 8) return 5;
    return length - 3;
}

const char* oplen_bucket_name(std::size_t bucket) {
    constexpr const char* names[kOpLenBuckets] = {"<=3", "4", "5", "6", "7", ">=8"};
    return bucket < kOpLenBuckets ? names[bucket] : "?";
}

void SplitStats::add(verify::Schema schema, verify::Difficulty difficulty, std::size_t op_length) {
    ++by_schema[schema];
    ++by_difficulty[difficulty];
    ++by_oplen[oplen_bucket(op_length)];
    ++total;
}

void SplitStats::merge(const SplitStats& other) {
    for (const auto& [k, v] : other.by_schema) by_schema[k] += v;
    for (const auto& [k, v] : other.by_difficulty) by_difficulty[k] += v;
    for (std::size_t i = 0; i < kOpLenBuckets; ++i) by_oplen[i] += other.by_oplen[i];
    total += other.total;
}

bool SplitStats::consistent() const {
    auto sum_map = [](const auto& m) {
        std::size_t s = 0;
        for (const auto& [k, v] : m) s += v;
        return s;
    };
    const std::size_t oplen = std::accumulate(by_oplen.begin(), by_oplen.end(), std::size_t{0});
    return sum_map(by_schema) == total && sum_map(by_difficulty) == total && oplen == total;
}

void CorpusStats::merge(const CorpusStats& other) {
    train.merge(other.train);
    test.merge(other.test);
}

CorpusStats stats(std::span<const Instance> instances) {
    CorpusStats s;
    for (const auto& inst : instances) {
        s.of(inst.split).add(inst.meta.schema, inst.meta.difficulty, operation_length(inst.program));
    }
    return s;
}

namespace {

std::string grouped(std::size_t n) {
    std::string digits = std::to_string(n);
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i != 0 && (digits.size() - i) % 3 == 0) out += ',';
        out += digits[i];
    }
    return out;
}

template <typename Map, typename Key>
std::size_t get(const Map& m, Key k) {
    const auto it = m.find(k);
    return it == m.end() ? 0 : it->second;
}

}  // namespace

std::string stats_table(const CorpusStats& s) {
    std::ostringstream os;
    auto row = [&](const std::string& name, std::size_t a, std::size_t b) {
        os << "  " << std::left << std::setw(28) << name << std::right << std::setw(8) << grouped(a) << std::setw(8)
           << grouped(b) << "\n";
    };
    os << std::left << std::setw(30) << "Statistic" << std::right << std::setw(8) << "Train" << std::setw(8) << "Test"
       << "\n";
    os << std::left << std::setw(30) << "Total instances" << std::right << std::setw(8) << grouped(s.train.total)
       << std::setw(8) << grouped(s.test.total) << "\n";
    os << "Problem schemas\n";
    for (verify::Schema k : verify::kAllSchemas) {
        row(verify::display_name(k), get(s.train.by_schema, k), get(s.test.by_schema, k));
    }
    os << "Difficulty levels\n";
    for (verify::Difficulty k : verify::kAllDifficulties) {
        row(verify::to_string(k), get(s.train.by_difficulty, k), get(s.test.by_difficulty, k));
    }
    os << "Operation length\n";
    for (std::size_t i = 0; i < kOpLenBuckets; ++i) {
        row(oplen_bucket_name(i), s.train.by_oplen[i], s.test.by_oplen[i]);
    }
    return os.str();
}

namespace {

nlohmann::ordered_json split_json(const SplitStats& s) {
    nlohmann::ordered_json j;
    j["total"] = s.total;
    for (verify::Schema k : verify::kAllSchemas) j["by_schema"][verify::to_string(k)] = get(s.by_schema, k);
    for (verify::Difficulty k : verify::kAllDifficulties) {
        j["by_difficulty"][verify::to_string(k)] = get(s.by_difficulty, k);
    }
    for (std::size_t i = 0; i < kOpLenBuckets; ++i) j["by_oplen"][oplen_bucket_name(i)] = s.by_oplen[i];
    j["consistent"] = s.consistent();
    return j;
}

}  // namespace

nlohmann::ordered_json to_json(const CorpusStats& s) {
    nlohmann::ordered_json j;
    j["train"] = split_json(s.train);
    j["test"] = split_json(s.test);
    return j;
}

}  // namespace bardsl::corpus
