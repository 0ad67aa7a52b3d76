#pragma once

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "wordmap/chartab.hpp"
#include "wordmap/dist.hpp"
#include "wordmap/walk.hpp"

namespace wordmap {

using json = nlohmann::ordered_json;

inline std::string fraction_str(const mpq_class& q) { return q.get_str(); }

/// Distribution artifact: exact mode carries numerator strings over a common
/// denominator; Monte Carlo mode carries double frequencies.
inline json distribution_json(const Distribution& d, const ConjugacyClasses& cc) {
    json j;
    j["group"] = d.group().spec();
    j["mode"] = d.is_exact() ? "exact" : "mc";
    if (d.is_exact()) {
        j["denominator"] = d.denominator().get_str();
        json vals = json::array();
        for (const auto& v : d.numerators()) vals.push_back(v.get_str());
        j["values"] = std::move(vals);
    } else {
        j["values"] = d.probabilities();
    }
    json cv = json::array();
    auto masses = class_masses(d, cc);
    for (size_t i = 0; i < masses.size(); ++i) cv.push_back(json::array({i, masses[i]}));
    j["class_values"] = std::move(cv);
    return j;
}

inline std::string distribution_csv(const Distribution& d) {
    std::ostringstream os;
    os << "element,probability\n";
    os.precision(17);
    for (u64 g = 0; g < d.size(); ++g) os << g << "," << d.value(g) << "\n";
    return os.str();
}

inline json character_table_json(const CharacterTable& T) {
    json j;
    j["group"] = T.G.spec();
    json classes = json::array();
    for (const auto& c : T.classes.classes)
        classes.push_back({{"size", c.size},
                           {"representative", c.representative},
                           {"centralizer_order", c.centralizer_order}});
    j["classes"] = std::move(classes);
    json chars = json::array();
    for (u32 i = 0; i < T.k(); ++i) {
        json row;
        row["degree"] = T.degrees[i];
        json vals = json::array();
        for (const auto& v : T.values[i]) vals.push_back(json::array({v.real(), v.imag()}));
        row["values"] = std::move(vals);
        chars.push_back(std::move(row));
    }
    j["characters"] = std::move(chars);
    return j;
}

inline json certificate_json(const Certificate& c) {
    json j;
    j["cutoff"] = c.cutoff;
    j["prime_cutoff"] = c.prime_cutoff;
    j["min_pn"] = c.min_pn;
    j["min_pn_fraction"] = c.min_pn_fraction;
    j["min_pn_at"] = c.min_pn_at;
    j["head_ok"] = c.head_ok;
    j["mod6_bound"] = c.mod6_bound;
    json pb = json::object();
    for (auto& [p, b] : c.prime_bounds) pb[std::to_string(p)] = b;
    j["prime_bounds"] = std::move(pb);
    j["prime_tail_finite"] = c.prime_tail_finite;
    j["prime_tail_finite_sharper"] = c.prime_tail_finite_sharper;
    j["integral_tail"] = c.integral_tail;
    j["return_bound"] = c.return_bound;
    j["tail_lower_bound"] = c.tail_lower_bound;
    j["tail_ok"] = c.tail_ok;
    j["verdict"] = c.verdict;
    j["pn"] = c.pn;
    return j;
}

}  // namespace wordmap
