#include "bardsl/twd/prompts.hpp"

#include "bardsl/dsl/printer.hpp"

namespace bardsl::twd {

const char* const kAdapterPreamble =
    "You solve arithmetic word problems by drafting bar-model diagrams in a small DSL before answering.";

namespace {

constexpr const char* kSyntax = R"(DSL statements, one per line:
  HL "name" row l1 l2 ...      bar on a row made of subsegments; l > 0 solid, l < 0 dashed, |l| is the length
  VL x row0 row1               vertical link at x joining rows row0 < row1 on a shared boundary
  HB "label" N|S row x0 x1     brace over [x0, x1] above (N) or below (S) a bar
  VB "label" col row0 row1     vertical brace at x = col grouping the bars of rows row0 < row1
  CMP "label" row_a row_b      shorthand for the difference between two bars

Rules:
  - split every bar into meaningful subsegments; equal parts for ratios and multiples, base quantity on the upper row
  - a reduction is the kept part (solid) followed by the removed part (dashed)
  - a transfer is a -t segment on one row and +t on another, with a VL at the boundary where they end up equal
  - brace ends and VL positions must fall exactly on segment boundaries of every row involved
  - VB only for grouping several independent objects
  - every given quantity appears as label text; the unknown is marked with "?"
  - never write the final answer in any label
)";

}  // namespace

std::string draft_prompt(const std::string& problem) {
    std::string out;
    out += "Draft a bar-model diagram for the problem below.\n\n";
    out += "First write a short analysis: the problem type, the objects involved, the given quantities and ";
    out += "relations, and what is asked. Then list what the diagram must show. ";
    out += "Finish with the program in a single fenced block marked dsl and nothing after it.\n\n";
    out += kSyntax;
    out += "\nProblem:\n";
    out += problem;
    out += "\n";
    return out;
}

std::string repair_prompt(const std::string& problem, const std::string& previous_response,
                          std::span<const std::string> problems) {
    std::string out;
    out += "Your previous draft did not pass the checks. Fix every issue listed and return the full corrected ";
    out += "program in one fenced dsl block, preceded by a one-paragraph explanation of the changes.\n\n";
    out += "Checks to satisfy: alignment of brace ends and links with boundaries, all givens labelled, ";
    out += "reductions and transfers drawn by convention, VB/VL used only where allowed, no answer in labels.\n\n";
    out += "Issues found:\n";
    for (const auto& p : problems) {
        out += "  - " + p + "\n";
    }
    out += "\n";
    out += kSyntax;
    out += "\nProblem:\n" + problem + "\n\nPrevious response:\n" + previous_response + "\n";
    return out;
}

std::string solve_prompt(const std::string& problem, const std::string& explanation, const dsl::Program& draft) {
    std::string out;
    out += "Use your draft as working notes and solve the problem.\n\n";
    out += "Return, in order: a refined explanation with the computation steps, the final program in one fenced ";
    out += "dsl block, and a last line of the form `Answer: <value>`.\n\n";
    out += kSyntax;
    out += "\nProblem:\n" + problem + "\n\nDraft explanation:\n" + explanation + "\n\nDraft program:\n```dsl\n";
    out += dsl::canonical_print(draft);
    out += "```\n";
    return out;
}

}  // namespace bardsl::twd
