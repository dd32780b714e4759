#pragma once

#include <cstddef>
#include <string>

#include "bardsl/dsl/program.hpp"
#include "bardsl/result.hpp"

namespace bardsl::dsl {

enum class ExpansionErrorKind { MissingBar, MultipleBars, Degenerate };

const char* to_string(ExpansionErrorKind kind);

struct ExpansionError {
    ExpansionErrorKind kind = ExpansionErrorKind::Degenerate;
    std::size_t statement = 0;  ///< index of the offending CMP
    int row = 0;
    std::string message;
};

/// Replaces every `CMP "label" a b` in place by
///   VL min(La,Lb) min(a,b) max(a,b)
///   HB "label" S argmax-row min(La,Lb) max(La,Lb)
/// where La, Lb are the bar totals of rows a and b.
Result<Program, ExpansionError> expand_macros(const Program& p);

}  // namespace bardsl::dsl
