#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bardsl::verify {

/// Fixed check registry. C* are critical, N* non-critical.
enum class CheckId { C1, C2, C3, C4, C5, C6, N1, N2, N3, N4 };

inline constexpr CheckId kAllChecks[] = {CheckId::C1, CheckId::C2, CheckId::C3, CheckId::C4, CheckId::C5,
                                         CheckId::C6, CheckId::N1, CheckId::N2, CheckId::N3, CheckId::N4};
inline constexpr CheckId kCriticalChecks[] = {CheckId::C1, CheckId::C2, CheckId::C3,
                                              CheckId::C4, CheckId::C5, CheckId::C6};
inline constexpr CheckId kNonCriticalChecks[] = {CheckId::N1, CheckId::N2, CheckId::N3, CheckId::N4};

enum class Severity { Critical, NonCritical };

const char* to_string(CheckId id);
const char* description(CheckId id);
const char* to_string(Severity s);
std::optional<CheckId> check_from_string(std::string_view s);
std::optional<Severity> severity_from_string(std::string_view s);

constexpr Severity severity_of(CheckId id) {
    return static_cast<int>(id) <= static_cast<int>(CheckId::C6) ? Severity::Critical : Severity::NonCritical;
}

struct Diagnostic {
    CheckId check_id = CheckId::C1;
    Severity severity = Severity::Critical;
    std::optional<std::size_t> statement;  ///< 0-based statement index
    std::optional<int> row;
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

Diagnostic make_diagnostic(CheckId id, std::optional<std::size_t> statement, std::optional<int> row, std::string message);

/// Statement index (diagnostics without one last), then check id, then message.
void sort_diagnostics(std::vector<Diagnostic>& diags);

/// 0 on any critical failure, else 1 - 0.1 per distinct failed non-critical check.
double rubric_score(std::span<const Diagnostic> diags);

}  // namespace bardsl::verify
