#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "hardy/cartesian.hpp"
#include "hardy/inequality.hpp"
#include "hardy/sharpness.hpp"

#ifndef HARDY_VERSION
#define HARDY_VERSION "0.1.0"
#endif

namespace hardy {

inline constexpr const char* kVersion = HARDY_VERSION;

using ParamValue = std::variant<double, std::string>;

struct SweepRow {
    double eps = 0.0;
    double ratio = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    std::optional<std::string> error;
};

/**
 * One result in serializable form. kind is verify, fullgrad, remainder, sweep
 * or error. For a remainder record lhs is the residual and rhs its allowance;
 * for a sweep lhs/rhs belong to the smallest-eps member and ratio is the max.
 */
struct ReportRecord {
    std::string kind = "verify";
    std::string theorem_id;
    std::vector<std::pair<std::string, ParamValue>> params;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool pass = true;
    double err_lhs = 0.0;
    double err_rhs = 0.0;
    std::optional<double> R_at_sup;
    std::vector<std::pair<std::string, double>> values;
    std::vector<SweepRow> rows;
    std::vector<std::string> warnings;
    std::optional<std::string> error;
    std::string version = kVersion;
};

namespace detail {

    // NaN compares equal to NaN so that records round-trip.
    inline bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

    inline bool same(const ParamValue& a, const ParamValue& b)
    {
        if (a.index() != b.index()) return false;
        if (a.index() == 0) return same(std::get<0>(a), std::get<0>(b));
        return std::get<1>(a) == std::get<1>(b);
    }

} // namespace detail

inline bool operator==(const SweepRow& a, const SweepRow& b)
{
    using detail::same;
    return same(a.eps, b.eps) && same(a.ratio, b.ratio) && same(a.lhs, b.lhs) && same(a.rhs, b.rhs) &&
           a.error == b.error;
}

inline bool operator==(const ReportRecord& a, const ReportRecord& b)
{
    using detail::same;
    if (a.params.size() != b.params.size() || a.values.size() != b.values.size()) return false;
    for (std::size_t i = 0; i < a.params.size(); ++i)
        if (a.params[i].first != b.params[i].first || !same(a.params[i].second, b.params[i].second)) return false;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        if (a.values[i].first != b.values[i].first || !same(a.values[i].second, b.values[i].second)) return false;
    const bool sup_eq = a.R_at_sup.has_value() == b.R_at_sup.has_value() &&
                        (!a.R_at_sup || same(*a.R_at_sup, *b.R_at_sup));
    return a.kind == b.kind && a.theorem_id == b.theorem_id && same(a.lhs, b.lhs) && same(a.rhs, b.rhs) &&
           same(a.ratio, b.ratio) && a.pass == b.pass && same(a.err_lhs, b.err_lhs) && same(a.err_rhs, b.err_rhs) &&
           sup_eq && a.rows == b.rows && a.warnings == b.warnings && a.error == b.error && a.version == b.version;
}

// Conversions -----------------------------------------------------------------

inline std::vector<std::pair<std::string, ParamValue>> case_params(const InequalityCase& c)
{
    std::string weights;
    for (double w : c.group.weights()) weights += (weights.empty() ? "" : ",") + detail::short_num(w);
    return {{"p", c.p},
            {"Q", c.Q()},
            {"R", c.R},
            {"weights", weights},
            {"profile", c.profile.name()},
            {"tol_margin", c.tol_margin},
            {"rel_tol", c.quadrature.rel_tol},
            {"abs_tol", c.quadrature.abs_tol}};
}

inline ReportRecord to_record(const VerificationResult& r)
{
    ReportRecord rec;
    rec.kind = "verify";
    rec.theorem_id = to_string(r.theorem);
    rec.params = case_params(r.params);
    if (r.theorem == TheoremId::UP1) rec.params.emplace_back("q", r.params.q());
    rec.lhs = r.lhs;
    rec.rhs = r.rhs;
    rec.ratio = r.ratio;
    rec.pass = r.pass;
    rec.err_lhs = r.err_lhs;
    rec.err_rhs = r.err_rhs;
    rec.R_at_sup = r.R_at_sup;
    rec.values.emplace_back("constant", r.constant);
    rec.values.insert(rec.values.end(), r.extras.begin(), r.extras.end());
    return rec;
}

inline ReportRecord to_record(const RemainderReport& r)
{
    ReportRecord rec;
    rec.kind = "remainder";
    rec.theorem_id = to_string(TheoremId::EQ_REM);
    rec.params = case_params(r.params);
    rec.lhs = r.residual;
    rec.rhs = 1e-6 * std::max(r.term_u, r.term_v);
    rec.ratio = rec.rhs > 0.0 ? rec.lhs / rec.rhs : 0.0;
    rec.pass = r.pass;
    rec.err_lhs = r.error;
    rec.values = {{"term_u", r.term_u}, {"term_v", r.term_v}, {"term_rem", r.term_rem}};
    if (r.p2_identity_residual) rec.values.emplace_back("p2_identity_residual", *r.p2_identity_residual);
    return rec;
}

/// threshold > 0 also requires the smallest-eps ratio to reach it.
inline ReportRecord to_record(const SweepResult& s, double threshold = 0.0)
{
    ReportRecord rec;
    rec.kind = "sweep";
    rec.theorem_id = to_string(s.theorem);
    rec.params = {{"family", to_string(s.family.id)}, {"p", s.family.p}, {"Q", s.family.Q}, {"R", s.family.R}};
    if (threshold > 0.0) rec.params.emplace_back("threshold", threshold);
    rec.ratio = s.max_ratio;
    rec.pass = s.pass();
    if (!s.points.empty()) {
        rec.lhs = s.points.back().lhs;
        rec.rhs = s.points.back().rhs;
        if (threshold > 0.0 && !(s.points.back().ratio >= threshold)) rec.pass = false;
    }
    rec.values = {{"constant", s.constant}, {"tail_monotone", s.tail_monotone ? 1.0 : 0.0}};
    for (const auto& pt : s.points) rec.rows.push_back({pt.eps, pt.ratio, pt.lhs, pt.rhs, pt.error});
    if (!s.tail_monotone) rec.warnings.push_back("ratios decrease over the tail of the epsilon grid");
    return rec;
}

inline ReportRecord to_record(const FullGradientResult& r)
{
    ReportRecord rec;
    rec.kind = "fullgrad";
    rec.theorem_id = r.theorem;
    rec.params = {{"p", r.p}, {"n", static_cast<double>(r.n)}, {"R", r.R}, {"function", r.function},
                  {"method", std::string(r.statistical ? "monte-carlo" : "tensor-gauss")}};
    rec.lhs = r.lhs;
    rec.rhs = r.rhs_radial;
    rec.ratio = r.rhs_radial > 0.0 ? r.lhs / r.rhs_radial : 0.0;
    rec.pass = r.pass();
    rec.err_lhs = r.err_lhs;
    rec.err_rhs = r.err_rhs_radial;
    rec.values = {{"constant", r.constant},
                  {"rhs_full", r.rhs_full},
                  {"err_rhs_full", r.err_rhs_full},
                  {"pass_radial", r.pass_radial ? 1.0 : 0.0},
                  {"pass_chain", r.pass_chain ? 1.0 : 0.0},
                  {"lhs_per_sphere", r.lhs_sphere},
                  {"rhs_radial_per_sphere", r.rhs_radial_sphere},
                  {"rhs_full_per_sphere", r.rhs_full_sphere}};
    return rec;
}

inline ReportRecord error_record(std::string theorem_id, std::vector<std::pair<std::string, ParamValue>> params,
                                 std::string message, std::optional<double> partial = std::nullopt)
{
    ReportRecord rec;
    rec.kind = "error";
    rec.theorem_id = std::move(theorem_id);
    rec.params = std::move(params);
    rec.pass = false;
    rec.error = std::move(message);
    if (partial) rec.values.emplace_back("partial_value", *partial);
    return rec;
}

// JSON ------------------------------------------------------------------------

namespace detail {

    inline std::string json_number(double v)
    {
        if (std::isnan(v)) return "\"nan\"";
        if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
        return fmt_num(v);
    }

    inline std::string json_string(const std::string& s)
    {
        std::string out = "\"";
        for (unsigned char ch : s) {
            switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (ch < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += static_cast<char>(ch);
                }
            }
        }
        return out + "\"";
    }

    inline double json_to_double(const nlohmann::ordered_json& j)
    {
        if (j.is_string()) {
            const auto s = j.get<std::string>();
            if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
            if (s == "inf") return std::numeric_limits<double>::infinity();
            if (s == "-inf") return -std::numeric_limits<double>::infinity();
            throw std::invalid_argument("expected a number, got string '" + s + "'");
        }
        return j.get<double>();
    }

} // namespace detail

/// Stable key order, 17 significant digits; non-finite numbers become "nan", "inf", "-inf".
inline std::string to_json(const ReportRecord& r, int indent = 2)
{
    using detail::json_number;
    using detail::json_string;
    const std::string pad(indent, ' ');
    const std::string pad2(2 * indent, ' ');
    std::string o = "{\n";
    auto field = [&](const std::string& key, const std::string& value, bool last = false) {
        o += pad + json_string(key) + ": " + value + (last ? "\n" : ",\n");
    };
    field("kind", json_string(r.kind));
    field("theorem_id", json_string(r.theorem_id));
    std::string params = "{";
    for (std::size_t i = 0; i < r.params.size(); ++i) {
        const auto& [k, v] = r.params[i];
        params += (i ? ", " : "") + json_string(k) + ": " +
                  (v.index() == 0 ? json_number(std::get<0>(v)) : json_string(std::get<1>(v)));
    }
    field("params", params + "}");
    field("lhs", json_number(r.lhs));
    field("rhs", json_number(r.rhs));
    field("ratio", json_number(r.ratio));
    field("pass", r.pass ? "true" : "false");
    field("err_lhs", json_number(r.err_lhs));
    field("err_rhs", json_number(r.err_rhs));
    if (r.R_at_sup) field("R_at_sup", json_number(*r.R_at_sup));
    std::string values = "{";
    for (std::size_t i = 0; i < r.values.size(); ++i)
        values += (i ? ", " : "") + json_string(r.values[i].first) + ": " + json_number(r.values[i].second);
    field("values", values + "}");
    if (!r.rows.empty()) {
        std::string rows = "[\n";
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
            const auto& row = r.rows[i];
            rows += pad2 + "{\"eps\": " + json_number(row.eps) + ", \"ratio\": " + json_number(row.ratio) +
                    ", \"lhs\": " + json_number(row.lhs) + ", \"rhs\": " + json_number(row.rhs);
            if (row.error) rows += ", \"error\": " + json_string(*row.error);
            rows += i + 1 < r.rows.size() ? "},\n" : "}\n";
        }
        field("rows", rows + pad + "]");
    }
    std::string warnings = "[";
    for (std::size_t i = 0; i < r.warnings.size(); ++i) warnings += (i ? ", " : "") + json_string(r.warnings[i]);
    field("warnings", warnings + "]");
    if (r.error) field("error", json_string(*r.error));
    field("version", json_string(r.version), true);
    return o + "}";
}

inline std::string to_json(const std::vector<ReportRecord>& records)
{
    if (records.empty()) return "[]\n";
    std::string o = "[\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        std::string rec = to_json(records[i]);
        // indent the nested object by two spaces
        std::string shifted = "  ";
        for (char ch : rec) {
            shifted += ch;
            if (ch == '\n') shifted += "  ";
        }
        o += shifted + (i + 1 < records.size() ? ",\n" : "\n");
    }
    return o + "]\n";
}

inline ReportRecord record_from_json(const nlohmann::ordered_json& j)
{
    using detail::json_to_double;
    ReportRecord r;
    r.kind = j.at("kind").get<std::string>();
    r.theorem_id = j.at("theorem_id").get<std::string>();
    for (const auto& [k, v] : j.at("params").items()) {
        if (v.is_string() && v.get<std::string>() != "nan" && v.get<std::string>() != "inf" &&
            v.get<std::string>() != "-inf")
            r.params.emplace_back(k, v.get<std::string>());
        else
            r.params.emplace_back(k, json_to_double(v));
    }
    r.lhs = json_to_double(j.at("lhs"));
    r.rhs = json_to_double(j.at("rhs"));
    r.ratio = json_to_double(j.at("ratio"));
    r.pass = j.at("pass").get<bool>();
    r.err_lhs = json_to_double(j.at("err_lhs"));
    r.err_rhs = json_to_double(j.at("err_rhs"));
    if (j.contains("R_at_sup")) r.R_at_sup = json_to_double(j.at("R_at_sup"));
    for (const auto& [k, v] : j.at("values").items()) r.values.emplace_back(k, json_to_double(v));
    if (j.contains("rows"))
        for (const auto& row : j.at("rows")) {
            SweepRow s{json_to_double(row.at("eps")), json_to_double(row.at("ratio")), json_to_double(row.at("lhs")),
                       json_to_double(row.at("rhs")), std::nullopt};
            if (row.contains("error")) s.error = row.at("error").get<std::string>();
            r.rows.push_back(s);
        }
    for (const auto& w : j.at("warnings")) r.warnings.push_back(w.get<std::string>());
    if (j.contains("error")) r.error = j.at("error").get<std::string>();
    r.version = j.at("version").get<std::string>();
    return r;
}

/// Parses either a single record object or an array of records.
inline std::vector<ReportRecord> parse_records(const std::string& text)
{
    const auto j = nlohmann::ordered_json::parse(text);
    std::vector<ReportRecord> out;
    if (j.is_array())
        for (const auto& o : j) out.push_back(record_from_json(o));
    else
        out.push_back(record_from_json(j));
    return out;
}

// CSV -------------------------------------------------------------------------

inline constexpr const char* kCsvHeader = "theorem_id,params,lhs,rhs,ratio,pass,err_lhs,err_rhs,R_at_sup";
inline constexpr const char* kSweepCsvHeader = "eps,ratio,lhs,rhs";

namespace detail {

    inline std::string csv_field(const std::string& s)
    {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string o = "\"";
        for (char ch : s) o += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return o + "\"";
    }

    inline std::string csv_number(double v)
    {
        if (std::isnan(v)) return "nan";
        if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
        return fmt_num(v);
    }

} // namespace detail

/// One row per record; params are "key=value" pairs joined by ';'.
inline std::string to_csv(const std::vector<ReportRecord>& records)
{
    std::string o = std::string(kCsvHeader) + "\n";
    for (const auto& r : records) {
        std::string params;
        for (const auto& [k, v] : r.params)
            params += (params.empty() ? "" : ";") + k + "=" +
                      (v.index() == 0 ? detail::csv_number(std::get<0>(v)) : std::get<1>(v));
        o += detail::csv_field(r.theorem_id) + "," + detail::csv_field(params) + "," + detail::csv_number(r.lhs) +
             "," + detail::csv_number(r.rhs) + "," + detail::csv_number(r.ratio) + "," + (r.pass ? "true" : "false") +
             "," + detail::csv_number(r.err_lhs) + "," + detail::csv_number(r.err_rhs) + "," +
             (r.R_at_sup ? detail::csv_number(*r.R_at_sup) : std::string()) + "\n";
    }
    return o;
}

/// Plot-ready per-epsilon table of a sweep record.
inline std::string to_sweep_csv(const ReportRecord& r)
{
    std::string o = std::string(kSweepCsvHeader) + "\n";
    for (const auto& row : r.rows)
        o += detail::csv_number(row.eps) + "," + detail::csv_number(row.ratio) + "," + detail::csv_number(row.lhs) +
             "," + detail::csv_number(row.rhs) + "\n";
    return o;
}

} // namespace hardy
