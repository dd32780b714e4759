#include "bardsl/corpus/manifest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bardsl/dsl/macros.hpp"
#include "bardsl/dsl/parser.hpp"

namespace bardsl::corpus {

using nlohmann::json;
using nlohmann::ordered_json;

const char* to_string(Split s) { return s == Split::Train ? "train" : "test"; }

std::optional<Split> split_from_string(std::string_view s) {
    if (s == "train") return Split::Train;
    if (s == "test") return Split::Test;
    return std::nullopt;
}

namespace {

Result<std::string, std::string> required_string(const json& j, const char* key) {
    if (!j.contains(key)) return fail(std::string("missing field '") + key + "'");
    if (!j.at(key).is_string()) return fail(std::string("field '") + key + "' must be a string");
    return j.at(key).get<std::string>();
}

}  // namespace

Result<Instance, IngestError> parse_record(std::string_view line_text, std::size_t line) {
    auto err = [line](std::string cause) { return fail(IngestError{line, std::move(cause)}); };
    const json j = json::parse(line_text.begin(), line_text.end(), nullptr, false);
    if (j.is_discarded()) return err("record is not valid JSON");
    if (!j.is_object()) return err("record must be a JSON object");

    Instance inst;
    auto id = required_string(j, "id");
    if (!id) return err(id.error());
    inst.id = *id;
    auto problem = required_string(j, "problem");
    if (!problem) return err(problem.error());
    inst.problem = *problem;
    auto dsl_text = required_string(j, "dsl");
    if (!dsl_text) return err(dsl_text.error());
    inst.dsl = *dsl_text;

    if (j.contains("image_path") && !j.at("image_path").is_null()) {
        if (!j.at("image_path").is_string()) return err("field 'image_path' must be a string or null");
        inst.image_path = j.at("image_path").get<std::string>();
    }

    if (j.contains("givens")) {
        const auto& g = j.at("givens");
        if (!g.is_array()) return err("field 'givens' must be an array of strings");
        for (const auto& v : g) {
            if (!v.is_string()) return err("field 'givens' must be an array of strings");
            inst.meta.givens.push_back(v.get<std::string>());
        }
    }
    if (j.contains("query_marker") && !j.at("query_marker").is_null()) {
        if (!j.at("query_marker").is_string()) return err("field 'query_marker' must be a string");
        inst.meta.query_marker = j.at("query_marker").get<std::string>();
    }
    if (j.contains("answer") && !j.at("answer").is_null()) {
        if (!j.at("answer").is_number()) return err("field 'answer' must be a number or null");
        inst.meta.answer = j.at("answer").get<double>();
    }

    auto schema = required_string(j, "schema");
    if (!schema) return err(schema.error());
    const auto sv = verify::schema_from_string(*schema);
    if (!sv) return err("unknown schema '" + *schema + "'");
    inst.meta.schema = *sv;

    auto difficulty = required_string(j, "difficulty");
    if (!difficulty) return err(difficulty.error());
    const auto dv = verify::difficulty_from_string(*difficulty);
    if (!dv) return err("unknown difficulty '" + *difficulty + "'");
    inst.meta.difficulty = *dv;

    auto split = required_string(j, "split");
    if (!split) return err(split.error());
    const auto spv = split_from_string(*split);
    if (!spv) return err("unknown split '" + *split + "'");
    inst.split = *spv;

    auto parsed = dsl::parse(inst.dsl, inst.id);
    if (!parsed) return err("dsl: " + parsed.error().format(inst.id));
    auto expanded = dsl::expand_macros(*parsed);
    if (!expanded) return err("dsl: " + expanded.error().message);
    inst.program = std::move(expanded).value();
    return inst;
}

Result<Manifest, IngestError> parse_manifest(std::string_view text) {
    Manifest m;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
        std::string_view line = text.substr(pos, end - pos);
        ++line_no;
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
        auto r = parse_record(line, line_no);
        if (r) {
            m.instances.push_back(std::move(r).value());
        } else {
            m.failures.push_back(std::move(r).error());
        }
    }
    if (m.instances.empty()) {
        std::string cause = "no records loaded";
        if (!m.failures.empty()) {
            cause += " (" + std::to_string(m.failures.size()) + " failed; first at line " +
                     std::to_string(m.failures.front().line) + ": " + m.failures.front().cause + ")";
        }
        return fail(IngestError{0, std::move(cause)});
    }
    return m;
}

Result<Manifest, IngestError> load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return fail(IngestError{0, "cannot open " + path.string()});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_manifest(buf.str());
}

std::string to_record_line(const Instance& inst) {
    ordered_json j;
    j["id"] = inst.id;
    j["problem"] = inst.problem;
    j["image_path"] = inst.image_path ? ordered_json(*inst.image_path) : ordered_json(nullptr);
    j["dsl"] = inst.dsl;
    j["givens"] = inst.meta.givens;
    j["query_marker"] = inst.meta.query_marker;
    j["answer"] = inst.meta.answer ? ordered_json(*inst.meta.answer) : ordered_json(nullptr);
    j["schema"] = verify::to_string(inst.meta.schema);
    j["difficulty"] = verify::to_string(inst.meta.difficulty);
    j["split"] = to_string(inst.split);
    return j.dump(-1, ' ', false, ordered_json::error_handler_t::replace);
}

std::string save_manifest_text(const std::vector<Instance>& instances) {
    std::string out;
    for (const auto& inst : instances) {
        out += to_record_line(inst);
        out += '\n';
    }
    return out;
}

std::size_t operation_length(const dsl::Program& p) { return p.statements.size(); }

}  // namespace bardsl::corpus
