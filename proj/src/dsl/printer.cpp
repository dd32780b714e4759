#include "bardsl/dsl/printer.hpp"

#include "bardsl/dsl/number.hpp"

namespace bardsl::dsl {

namespace {

template <class... Fs>
struct Overload : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
Overload(Fs...) -> Overload<Fs...>;

}  // namespace

bool Program::has_macros() const {
    for (const auto& s : statements) {
        if (std::holds_alternative<Compare>(s)) return true;
    }
    return false;
}

std::vector<std::string> Program::labels() const {
    std::vector<std::string> out;
    for (const auto& s : statements) {
        std::visit(Overload{
                       [&](const HorizontalLine& v) { out.push_back(v.name); },
                       [&](const HorizontalBrace& v) { out.push_back(v.label); },
                       [&](const VerticalBrace& v) { out.push_back(v.label); },
                       [&](const Compare& v) { out.push_back(v.label); },
                       [](const VerticalLink&) {},
                   },
                   s);
    }
    return out;
}

const char* keyword(const Statement& s) {
    return std::visit(Overload{
                          [](const HorizontalLine&) { return "HL"; },
                          [](const VerticalLink&) { return "VL"; },
                          [](const HorizontalBrace&) { return "HB"; },
                          [](const VerticalBrace&) { return "VB"; },
                          [](const Compare&) { return "CMP"; },
                      },
                      s);
}

std::string quote(std::string_view text) {
    std::string out;
    out.reserve(text.size() + 2);
    out.push_back('"');
    for (char c : text) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string print_statement(const Statement& s) {
    return std::visit(
        Overload{
            [](const HorizontalLine& v) {
                std::string out = "HL " + quote(v.name) + " " + std::to_string(v.row);
                for (double seg : v.segments) out += " " + format_decimal(seg);
                return out;
            },
            [](const VerticalLink& v) {
                return "VL " + format_decimal(v.x) + " " + std::to_string(v.row0) + " " + std::to_string(v.row1);
            },
            [](const HorizontalBrace& v) {
                return "HB " + quote(v.label) + (v.side == Side::North ? " N " : " S ") + std::to_string(v.row) + " " +
                       format_decimal(v.x0) + " " + format_decimal(v.x1);
            },
            [](const VerticalBrace& v) {
                return "VB " + quote(v.label) + " " + format_decimal(v.col) + " " + std::to_string(v.row0) + " " +
                       std::to_string(v.row1);
            },
            [](const Compare& v) {
                return "CMP " + quote(v.label) + " " + std::to_string(v.row_a) + " " + std::to_string(v.row_b);
            },
        },
        s);
}

std::string canonical_print(const Program& p) {
    std::string out;
    for (const auto& s : p.statements) {
        out += print_statement(s);
        out.push_back('\n');
    }
    return out;
}

}  // namespace bardsl::dsl
