#include "bardsl/dsl/printer.hpp"
#include "bardsl/judge/judge.hpp"

namespace bardsl::judge {

const char* const kSystemPreamble =
    "You grade bar-model DSL programs. Follow the scoring instructions exactly and use the required output format.";

namespace {

constexpr const char* kScoringTemplate = R"(You are an expert instructor in bar-model reasoning.
You are familiar with evaluating bar-model diagrams expressed in a structured Graphic Intermediate Representation (DSL).

Your task is to score the given DSL code based solely on the problem statement and the provided solution (including DSL code).
You must not modify, complete, or reinterpret the DSL code.
Do not introduce any information beyond what is explicitly provided.

Evaluation Scope

All judgments must follow the visible-text-only principle:
only quoted strings in HL names and HB/VB labels are considered visible annotations.
Numeric segment lengths and coordinates are not treated as textual information.

Scoring Criteria

Evaluate the DSL code according to the following checklist.
For each item, output either [PASS] or [FAIL], together with a brief justification.

Critical Criteria (Fail Any => Score = 0.0)

(1) Alignment correctness: all bracket endpoints align with bar-segment boundaries; all vertical alignment markers lie on valid shared boundaries.

(2) Information completeness: all given quantities and required unknowns from the problem statement are explicitly annotated using visible text.

(3) Numerical consistency: all segment lengths are numerically self-consistent with the problem logic, without arbitrary scaling or unexplained values.

(4) Transfer correctness: transfer operations must be represented by paired subtraction and addition across rows, with appropriate alignment markers when required.

(5) Answer leakage: no final answer values appear in any visible annotations.

(6) VB/VL usage: vertical brackets are used only for multi-object aggregation; vertical alignment markers appear only at shared cross-row boundaries.

Non-Critical Criteria

The following criteria affect the score only if all critical criteria pass:

(7) Reduction conventions: reduction and deficit relations follow the left-solid/right-dashed convention.

(8) Multiplicative structure: multiplicative relations are expressed using repeated equal-length segments, with the base quantity placed on the upper row.

(9) Semantic decomposition: horizontal bars are decomposed into semantically meaningful subsegments rather than drawn as undivided totals.

(10) Label conciseness: visible annotations are concise, non-redundant, and free of embedded calculations.

Scoring Rule

If any critical criterion is marked [FAIL], the final score is 0.0.
Otherwise, the base score is 1.0, with a penalty of 0.1 deducted for each failed non-critical criterion.

Output Format

First output a section titled [Scoring Rationale], listing each criterion with its pass/fail status and justification.
Then output a single line:

[Final Score]: <float between 0.0 and 1.0>

Do not output JSON or any additional formatting.
)";

}  // namespace

std::string build_prompt(const std::string& problem, const dsl::Program& candidate) {
    std::string out = kScoringTemplate;
    out += "\nProblem Statement\n\n";
    out += problem;
    out += "\n\nProvided Solution (DSL)\n\n```dsl\n";
    out += dsl::canonical_print(candidate);
    out += "```\n";
    return out;
}

JudgeRequest build_request(const corpus::Instance& instance, const dsl::Program& candidate) {
    return JudgeRequest{instance.id, chat::Message{kSystemPreamble, build_prompt(instance.problem, candidate), {}}};
}

}  // namespace bardsl::judge
