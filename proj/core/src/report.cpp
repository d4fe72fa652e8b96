#include "eur/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace eur {

namespace {

std::string num17(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void json_escape(std::ostringstream& os, const std::string& s) {
    os << '"';
    for (char c : s) {
        switch (c) {
            case '"': os << "\\\""; break;
            case '\\': os << "\\\\"; break;
            case '\n': os << "\\n"; break;
            default: os << c;
        }
    }
    os << '"';
}

CheckStatus status_from_string(const std::string& s) {
    if (s == "pass") return CheckStatus::pass;
    if (s == "divergent") return CheckStatus::divergent;
    if (s == "indeterminate") return CheckStatus::indeterminate;
    return CheckStatus::fail;
}

std::string strip_extension(const std::string& path) {
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
    return path.substr(0, dot);
}

}  // namespace

bool Report::all_passed() const {
    for (const auto& c : checks)
        if (c.status == CheckStatus::fail) return false;
    return true;
}

std::size_t Report::count(CheckStatus s) const {
    std::size_t n = 0;
    for (const auto& c : checks)
        if (c.status == s) ++n;
    return n;
}

std::string report_to_json(const Report& r) {
    std::ostringstream os;
    os << "{\n  \"scenario\": ";
    json_escape(os, r.scenario);
    os << ",\n  \"params\": {";
    bool first = true;
    for (const auto& [k, v] : r.params) {  // std::map: deterministic key order
        if (!first) os << ", ";
        first = false;
        json_escape(os, k);
        os << ": " << num17(v);
    }
    os << "},\n  \"checks\": [";
    for (std::size_t i = 0; i < r.checks.size(); ++i) {
        const auto& c = r.checks[i];
        os << (i ? ",\n    " : "\n    ") << "{\"name\": ";
        json_escape(os, c.name);
        os << ", \"paper_ref\": ";
        json_escape(os, c.ref_tag);
        os << ", \"lhs\": " << num17(c.lhs) << ", \"rhs\": " << num17(c.rhs)
           << ", \"ratio\": " << num17(c.ratio) << ", \"gap\": " << num17(c.absolute_gap)
           << ", \"status\": \"" << to_string(c.status) << "\"}";
    }
    os << (r.checks.empty() ? "]" : "\n  ]");
    os << ",\n  \"fields\": [";
    for (std::size_t i = 0; i < r.fields.size(); ++i) {
        os << (i ? ", " : "") << "{\"name\": ";
        json_escape(os, r.fields[i].name);
        os << ", \"path\": ";
        json_escape(os, r.fields[i].path);
        os << "}";
    }
    os << "]\n}\n";
    return os.str();
}

Report parse_report_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    Report r;
    r.scenario = j.at("scenario").get<std::string>();
    for (const auto& [k, v] : j.at("params").items()) r.params[k] = v.get<double>();
    const auto num = [](const nlohmann::json& v) {
        return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
    };
    for (const auto& jc : j.at("checks")) {
        RelationCheck c;
        c.name = jc.at("name").get<std::string>();
        c.ref_tag = jc.at("paper_ref").get<std::string>();
        c.lhs = num(jc.at("lhs"));
        c.rhs = num(jc.at("rhs"));
        c.ratio = num(jc.at("ratio"));
        c.absolute_gap = num(jc.at("gap"));
        c.status = status_from_string(jc.at("status").get<std::string>());
        r.checks.push_back(std::move(c));
    }
    for (const auto& jf : j.at("fields")) {
        FieldExport f;
        f.name = jf.at("name").get<std::string>();
        f.path = jf.at("path").get<std::string>();
        r.fields.push_back(std::move(f));
    }
    return r;
}

std::string report_to_csv(const Report& r) {
    std::ostringstream os;
    os << "name,paper_ref,lhs,rhs,ratio,gap,status\n";
    for (const auto& c : r.checks) {
        std::string name = c.name;
        for (char& ch : name)
            if (ch == ',') ch = ';';
        os << name << ',' << c.ref_tag << ',' << num17(c.lhs) << ',' << num17(c.rhs) << ','
           << num17(c.ratio) << ',' << num17(c.absolute_gap) << ',' << to_string(c.status)
           << '\n';
    }
    return os.str();
}

std::vector<std::string> emit_report(Report& r, const std::string& format,
                                     const std::string& path) {
    std::vector<std::string> written;
    const std::string stem = strip_extension(path);
    for (auto& f : r.fields) {
        f.path = stem + "_" + f.name + ".csv";
        std::ofstream out(f.path);
        if (!out) throw std::runtime_error("emit_report: cannot write " + f.path);
        for (std::size_t i = 0; i < f.columns.size(); ++i)
            out << (i ? "," : "") << f.columns[i];
        out << '\n';
        for (const auto& row : f.rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                out << (i ? "," : "") << num17(row[i]);
            out << '\n';
        }
        written.push_back(f.path);
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_report: cannot write " + path);
    if (format == "json")
        out << report_to_json(r);
    else if (format == "csv")
        out << report_to_csv(r);
    else
        throw std::invalid_argument("emit_report: format must be json or csv");
    written.push_back(path);
    return written;
}

}  // namespace eur
