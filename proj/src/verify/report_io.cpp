#include "bardsl/verify/report_io.hpp"

#include "bardsl/dsl/number.hpp"

namespace bardsl::verify {

using nlohmann::json;

std::string dump_json(const json& j, int indent) {
    return j.dump(indent, ' ', false, json::error_handler_t::replace);
}

std::string to_text(const Diagnostic& d) {
    std::string stmt = d.statement ? std::to_string(*d.statement) : std::string("-");
    return std::string(to_string(d.severity)) + " " + to_string(d.check_id) + " stmt:" + stmt + " " + d.message;
}

std::string to_text(const VerificationReport& r) {
    using dsl::format_fixed;
    std::string out;
    for (const auto& d : r.diagnostics) out += to_text(d) + "\n";
    for (const auto& n : r.notes) out += "note " + n + "\n";
    out += "rubric_score " + format_fixed(r.rubric_score, 2) + " align " + format_fixed(r.dims.align, 2) + " cover " +
           format_fixed(r.dims.cover, 2) + " num " + format_fixed(r.dims.num, 2) + " norm " +
           format_fixed(r.dims.norm, 2) + " leak " + format_fixed(r.dims.leak, 2) + "\n";
    return out;
}

json to_json(const Dims& d) {
    return json{{"align", d.align}, {"cover", d.cover}, {"num", d.num}, {"norm", d.norm}, {"leak", d.leak}};
}

json to_json(const Diagnostic& d) {
    json j{{"check_id", to_string(d.check_id)}, {"severity", to_string(d.severity)}, {"message", d.message}};
    j["statement"] = d.statement ? json(*d.statement) : json(nullptr);
    j["row"] = d.row ? json(*d.row) : json(nullptr);
    return j;
}

json to_json(const VerificationReport& r) {
    json diags = json::array();
    for (const auto& d : r.diagnostics) diags.push_back(to_json(d));
    return json{{"diagnostics", diags}, {"rubric_score", r.rubric_score}, {"dims", to_json(r.dims)}, {"notes", r.notes}};
}

Result<Dims, std::string> dims_from_json(const json& j) {
    try {
        Dims d;
        d.align = j.at("align").get<double>();
        d.cover = j.at("cover").get<double>();
        d.num = j.at("num").get<double>();
        d.norm = j.at("norm").get<double>();
        d.leak = j.at("leak").get<double>();
        return d;
    } catch (const json::exception& e) {
        return fail(std::string("dims: ") + e.what());
    }
}

Result<VerificationReport, std::string> report_from_json(const json& j) {
    try {
        VerificationReport r;
        r.rubric_score = j.at("rubric_score").get<double>();
        auto dims = dims_from_json(j.at("dims"));
        if (!dims) return fail(dims.error());
        r.dims = *dims;
        for (const auto& dj : j.at("diagnostics")) {
            const auto id = check_from_string(dj.at("check_id").get<std::string>());
            const auto sev = severity_from_string(dj.at("severity").get<std::string>());
            if (!id || !sev) return fail(std::string("unknown check id or severity"));
            Diagnostic d{*id, *sev, std::nullopt, std::nullopt, dj.at("message").get<std::string>()};
            if (!dj.at("statement").is_null()) d.statement = dj.at("statement").get<std::size_t>();
            if (!dj.at("row").is_null()) d.row = dj.at("row").get<int>();
            r.diagnostics.push_back(std::move(d));
        }
        if (j.contains("notes")) r.notes = j.at("notes").get<std::vector<std::string>>();
        return r;
    } catch (const json::exception& e) {
        return fail(std::string("report: ") + e.what());
    }
}

json to_json(const ProblemMeta& m) {
    json j{{"givens", m.givens},
           {"query_marker", m.query_marker},
           {"schema", to_string(m.schema)},
           {"difficulty", to_string(m.difficulty)}};
    j["answer"] = m.answer ? json(*m.answer) : json(nullptr);
    return j;
}

Result<ProblemMeta, std::string> meta_from_json(const json& j) {
    if (!j.is_object()) return fail(std::string("problem metadata must be a JSON object"));
    try {
        ProblemMeta m;
        if (j.contains("givens") && !j["givens"].is_null()) m.givens = j["givens"].get<std::vector<std::string>>();
        if (j.contains("query_marker") && !j["query_marker"].is_null()) {
            m.query_marker = j["query_marker"].get<std::string>();
        }
        if (j.contains("answer") && !j["answer"].is_null()) m.answer = j["answer"].get<double>();
        if (j.contains("schema") && !j["schema"].is_null()) {
            const auto s = schema_from_string(j["schema"].get<std::string>());
            if (!s) return fail("unknown schema '" + j["schema"].get<std::string>() + "'");
            m.schema = *s;
        }
        if (j.contains("difficulty") && !j["difficulty"].is_null()) {
            const auto d = difficulty_from_string(j["difficulty"].get<std::string>());
            if (!d) return fail("unknown difficulty '" + j["difficulty"].get<std::string>() + "'");
            m.difficulty = *d;
        }
        return m;
    } catch (const json::exception& e) {
        return fail(std::string("problem metadata: ") + e.what());
    }
}

}  // namespace bardsl::verify
