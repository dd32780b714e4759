#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bardsl::verify {

enum class Schema { ProportionalDistribution, RatePercentage, ChangeRevert, SumSplit, DifferenceAnalysis };
enum class Difficulty { Easy, Medium, Hard };

inline constexpr Schema kAllSchemas[] = {Schema::ProportionalDistribution, Schema::RatePercentage, Schema::ChangeRevert,
                                         Schema::DifferenceAnalysis, Schema::SumSplit};
inline constexpr Difficulty kAllDifficulties[] = {Difficulty::Easy, Difficulty::Medium, Difficulty::Hard};

const char* to_string(Schema s);
const char* to_string(Difficulty d);
/// Human-readable row title as used in corpus tables.
const char* display_name(Schema s);
std::optional<Schema> schema_from_string(std::string_view s);
std::optional<Difficulty> difficulty_from_string(std::string_view s);

/// What the verifier needs to know about the word problem behind a diagram.
struct ProblemMeta {
    std::vector<std::string> givens;   ///< must show up verbatim in visible labels
    std::string query_marker;          ///< optional text expected on the "?" label
    std::optional<double> answer;      ///< final numeric answer, for leakage
    Schema schema = Schema::ProportionalDistribution;
    Difficulty difficulty = Difficulty::Medium;

    bool operator==(const ProblemMeta&) const = default;
};

}  // namespace bardsl::verify
