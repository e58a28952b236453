#include "entvar/report.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <vector>

namespace entvar {

namespace {

using nlohmann::json;

void emit(const json& v, std::string& out) {
    switch (v.type()) {
        case json::value_t::object: {
            out += '{';
            bool first = true;
            for (const auto& [key, item] : v.items()) {
                if (!first) out += ',';
                first = false;
                out += json(key).dump();
                out += ':';
                emit(item, out);
            }
            out += '}';
            return;
        }
        case json::value_t::array: {
            out += '[';
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out += ',';
                emit(v[i], out);
            }
            out += ']';
            return;
        }
        case json::value_t::number_float: out += format_double(v.get<double>()); return;
        default: out += v.dump(); return;
    }
}

void flatten(const json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (v.is_object()) {
        for (const auto& [key, item] : v.items()) flatten(item, prefix.empty() ? key : prefix + "." + key, out);
        return;
    }
    std::string text;
    if (v.is_string()) {
        text = v.get<std::string>();
    } else if (v.is_number_float()) {
        text = format_double(v.get<double>());
    } else {
        text = emit_json(v);
    }
    out.emplace_back(prefix, std::move(text));
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

}  // namespace

std::string format_double(double x) {
    // JSON has no representation for non-finite values.
    if (!std::isfinite(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s = buf;
    // Keep floats recognisable as floats after a round trip.
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

json Report::document() const {
    return json{{"config", config}, {"results", results}, {"summary", summary}, {"version", kToolVersion}};
}

json exact_to_json(const SymExpr& e) {
    json terms = json::array();
    for (const auto& [mono, coeff] : e.terms()) {
        terms.push_back({{"gamma_deg", mono.gamma_deg}, {"pi2_deg", mono.pi2_deg}, {"coefficient", coeff.to_string()}});
    }
    return {{"string", e.to_string()}, {"numeric", e.to_double()}, {"terms", terms}};
}

std::string emit_json(const json& value) {
    std::string out;
    emit(value, out);
    return out;
}

std::string emit_csv(const Report& report) {
    std::vector<std::pair<std::string, std::string>> config_fields;
    flatten(report.config, "", config_fields);

    std::vector<std::vector<std::pair<std::string, std::string>>> rows;
    std::vector<std::string> columns;
    std::set<std::string> seen;
    for (const auto& [key, value] : config_fields) {
        columns.push_back(key);
        seen.insert(key);
    }
    for (const auto& r : report.results) {
        auto& row = rows.emplace_back();
        flatten(r, "", row);
        for (const auto& [key, value] : row) {
            if (seen.insert(key).second) columns.push_back(key);
        }
    }

    std::ostringstream os;
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_field(columns[i]);
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            std::string cell;
            for (const auto& [key, value] : config_fields)
                if (key == columns[i]) cell = value;
            for (const auto& [key, value] : row)
                if (key == columns[i]) cell = value;
            os << (i ? "," : "") << csv_field(cell);
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace entvar
