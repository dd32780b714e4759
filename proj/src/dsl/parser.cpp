#include "bardsl/dsl/parser.hpp"

#include <charconv>
#include <cmath>
#include <vector>

#include "bardsl/dsl/number.hpp"

namespace bardsl::dsl {

const char* to_string(ParseErrorKind kind) {
    switch (kind) {
        case ParseErrorKind::UnknownKeyword: return "UnknownKeyword";
        case ParseErrorKind::MalformedNumber: return "MalformedNumber";
        case ParseErrorKind::UnterminatedString: return "UnterminatedString";
        case ParseErrorKind::ArityMismatch: return "ArityMismatch";
        case ParseErrorKind::ZeroSegment: return "ZeroSegment";
        case ParseErrorKind::BadRowOrder: return "BadRowOrder";
        case ParseErrorKind::BadSide: return "BadSide";
        case ParseErrorKind::EmptyProgram: return "EmptyProgram";
    }
    return "?";
}

std::string ParseError::format(std::string_view source_name) const {
    return std::string(source_name) + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
           to_string(kind) + ": " + message;
}

namespace {

struct Token {
    enum class Kind { Word, String } kind = Kind::Word;
    std::string text;
    int column = 1;
};

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

class LineParser {
public:
    LineParser(std::string_view line, int line_no) : line_(line), line_no_(line_no) {}

    /// nullopt for blank/comment-only lines.
    Result<std::optional<Statement>, ParseError> run() {
        if (auto err = tokenize()) return fail(std::move(*err));
        if (tokens_.empty()) return std::optional<Statement>{};
        auto stmt = statement();
        if (!stmt) return fail(std::move(stmt).error());
        return std::optional<Statement>{std::move(stmt).value()};
    }

private:
    ParseError error(ParseErrorKind kind, int column, std::string message) const {
        return ParseError{line_no_, column, kind, std::move(message)};
    }

    std::optional<ParseError> tokenize() {
        std::size_t i = 0;
        while (i < line_.size()) {
            const char c = line_[i];
            if (is_blank(c)) {
                ++i;
            } else if (c == '#') {
                break;
            } else if (c == '"') {
                const int col = static_cast<int>(i) + 1;
                std::string text;
                ++i;
                bool closed = false;
                while (i < line_.size()) {
                    const char d = line_[i];
                    if (d == '\\' && i + 1 < line_.size() && (line_[i + 1] == '"' || line_[i + 1] == '\\')) {
                        text.push_back(line_[i + 1]);
                        i += 2;
                    } else if (d == '"') {
                        ++i;
                        closed = true;
                        break;
                    } else {
                        text.push_back(d);
                        ++i;
                    }
                }
                if (!closed) return error(ParseErrorKind::UnterminatedString, col, "string is not closed before end of line");
                tokens_.push_back({Token::Kind::String, std::move(text), col});
            } else {
                const int col = static_cast<int>(i) + 1;
                const std::size_t start = i;
                while (i < line_.size() && !is_blank(line_[i]) && line_[i] != '#' && line_[i] != '"') ++i;
                tokens_.push_back({Token::Kind::Word, std::string(line_.substr(start, i - start)), col});
            }
        }
        return std::nullopt;
    }

    Result<std::string, ParseError> string_at(std::size_t idx) const {
        const Token& t = tokens_[idx];
        if (t.kind != Token::Kind::String) {
            return fail(error(ParseErrorKind::ArityMismatch, t.column, "expected a quoted string, found '" + t.text + "'"));
        }
        return t.text;
    }

    Result<double, ParseError> number_at(std::size_t idx, bool nonnegative) const {
        const Token& t = tokens_[idx];
        if (t.kind != Token::Kind::Word) {
            return fail(error(ParseErrorKind::MalformedNumber, t.column, "expected a number, found a string"));
        }
        const auto v = parse_decimal(t.text);
        if (!v) return fail(error(ParseErrorKind::MalformedNumber, t.column, "malformed number '" + t.text + "'"));
        if (std::fabs(*v) > kMaxMagnitude) {
            return fail(error(ParseErrorKind::MalformedNumber, t.column, "number '" + t.text + "' is out of range"));
        }
        if (nonnegative && *v < 0) {
            return fail(error(ParseErrorKind::MalformedNumber, t.column, "coordinate '" + t.text + "' must be nonnegative"));
        }
        return *v;
    }

    Result<int, ParseError> row_at(std::size_t idx) const {
        const Token& t = tokens_[idx];
        if (t.kind != Token::Kind::Word) {
            return fail(error(ParseErrorKind::MalformedNumber, t.column, "expected a row index, found a string"));
        }
        const std::string& s = t.text;
        bool digits = !s.empty();
        for (char c : s) digits = digits && c >= '0' && c <= '9';
        if (!digits) {
            return fail(error(ParseErrorKind::MalformedNumber, t.column, "row index '" + s + "' must be a nonnegative integer"));
        }
        int value = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc{} || ptr != s.data() + s.size() || value > kMaxRowIndex) {
            return fail(error(ParseErrorKind::MalformedNumber, t.column, "row index '" + s + "' is out of range"));
        }
        return value;
    }

    std::optional<ParseError> expect_arity(std::size_t n, const char* synopsis) const {
        if (tokens_.size() == n) return std::nullopt;
        const int col = tokens_.size() > n ? tokens_[n].column : tokens_.front().column;
        return error(ParseErrorKind::ArityMismatch, col,
                     std::string("expected ") + synopsis + " (" + std::to_string(n - 1) + " operands, got " +
                         std::to_string(tokens_.size() - 1) + ")");
    }

    std::optional<ParseError> check_rows(int row0, int row1, std::size_t row0_idx) const {
        if (row0 < row1) return std::nullopt;
        return error(ParseErrorKind::BadRowOrder, tokens_[row0_idx].column,
                     "row0 (" + std::to_string(row0) + ") must be less than row1 (" + std::to_string(row1) + ")");
    }

#define BARDSL_TRY(var, expr)                            \
    auto var##_r = (expr);                               \
    if (!var##_r) return fail(std::move(var##_r).error()); \
    auto var = std::move(var##_r).value()

    Result<Statement, ParseError> statement() const {
        const Token& head = tokens_.front();
        if (head.kind != Token::Kind::Word) {
            return fail(error(ParseErrorKind::UnknownKeyword, head.column, "statement must start with a keyword"));
        }
        const std::string& kw = head.text;
        if (kw == "HL") {
            if (tokens_.size() < 4) {
                return fail(error(ParseErrorKind::ArityMismatch, head.column,
                                  "expected HL \"name\" row l1 [l2 ...] (at least 3 operands, got " +
                                      std::to_string(tokens_.size() - 1) + ")"));
            }
            HorizontalLine hl;
            BARDSL_TRY(name, string_at(1));
            BARDSL_TRY(row, row_at(2));
            hl.name = std::move(name);
            hl.row = row;
            for (std::size_t i = 3; i < tokens_.size(); ++i) {
                BARDSL_TRY(len, number_at(i, false));
                if (len == 0) {
                    return fail(error(ParseErrorKind::ZeroSegment, tokens_[i].column, "segment length must be nonzero"));
                }
                hl.segments.push_back(len);
            }
            return Statement{std::move(hl)};
        }
        if (kw == "VL") {
            if (auto e = expect_arity(4, "VL x row0 row1")) return fail(std::move(*e));
            BARDSL_TRY(x, number_at(1, true));
            BARDSL_TRY(row0, row_at(2));
            BARDSL_TRY(row1, row_at(3));
            if (auto e = check_rows(row0, row1, 2)) return fail(std::move(*e));
            return Statement{VerticalLink{x, row0, row1}};
        }
        if (kw == "HB") {
            if (auto e = expect_arity(6, "HB \"label\" N|S row x0 x1")) return fail(std::move(*e));
            BARDSL_TRY(label, string_at(1));
            const Token& side_tok = tokens_[2];
            Side side{};
            if (side_tok.kind == Token::Kind::Word && side_tok.text == "N") {
                side = Side::North;
            } else if (side_tok.kind == Token::Kind::Word && side_tok.text == "S") {
                side = Side::South;
            } else {
                return fail(error(ParseErrorKind::BadSide, side_tok.column, "side must be N or S, found '" + side_tok.text + "'"));
            }
            BARDSL_TRY(row, row_at(3));
            BARDSL_TRY(x0, number_at(4, true));
            BARDSL_TRY(x1, number_at(5, true));
            if (!(x0 < x1)) {
                return fail(error(ParseErrorKind::BadRowOrder, tokens_[4].column, "brace interval must satisfy x0 < x1"));
            }
            return Statement{HorizontalBrace{std::move(label), side, row, x0, x1}};
        }
        if (kw == "VB") {
            if (auto e = expect_arity(5, "VB \"label\" col row0 row1")) return fail(std::move(*e));
            BARDSL_TRY(label, string_at(1));
            BARDSL_TRY(col, number_at(2, true));
            BARDSL_TRY(row0, row_at(3));
            BARDSL_TRY(row1, row_at(4));
            if (auto e = check_rows(row0, row1, 3)) return fail(std::move(*e));
            return Statement{VerticalBrace{std::move(label), col, row0, row1}};
        }
        if (kw == "CMP") {
            if (auto e = expect_arity(4, "CMP \"label\" row_a row_b")) return fail(std::move(*e));
            BARDSL_TRY(label, string_at(1));
            BARDSL_TRY(a, row_at(2));
            BARDSL_TRY(b, row_at(3));
            return Statement{Compare{std::move(label), a, b}};
        }
        return fail(error(ParseErrorKind::UnknownKeyword, head.column, "unknown keyword '" + kw + "'"));
    }

#undef BARDSL_TRY

    std::string_view line_;
    int line_no_;
    std::vector<Token> tokens_;
};

}  // namespace

Result<Program, ParseError> parse(std::string_view source, std::optional<std::string> source_name) {
    Program program;
    program.source_name = std::move(source_name);
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= source.size()) {
        const std::size_t nl = source.find('\n', pos);
        const std::size_t end = nl == std::string_view::npos ? source.size() : nl;
        ++line_no;
        LineParser lp(source.substr(pos, end - pos), line_no);
        auto r = lp.run();
        if (!r) return fail(std::move(r).error());
        if (r.value()) program.statements.push_back(std::move(*r.value()));
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    if (program.statements.empty()) {
        return fail(ParseError{1, 1, ParseErrorKind::EmptyProgram, "program contains no statements"});
    }
    return program;
}

}  // namespace bardsl::dsl
