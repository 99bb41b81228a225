#pragma once

#include <json.hpp>

#include "irclab/chacon.hpp"
#include "irclab/dilation.hpp"
#include "irclab/empirical.hpp"
#include "irclab/orbit_stats.hpp"

namespace irclab {

// Key-ordered JSON everywhere so identical runs serialize byte-identically.
using Json = nlohmann::ordered_json;

inline std::string sided_name(Sided s) { return s == Sided::one ? "one" : "two"; }

inline Json to_json(const LevelSet& ls) {
    Json j;
    j["level"] = ls.level;
    j["sided"] = sided_name(ls.sided);
    j["base"] = ls.base;
    Json cells = Json::array();
    for (const Word& w : ls.cells) cells.push_back(w.str());
    j["cells"] = std::move(cells);
    return j;
}

inline Json to_json(const chacon::OccurrenceReport& rep) {
    Json j;
    j["pattern"] = rep.pattern.str();
    j["starts"] = rep.starts;
    Json gaps = Json::array();
    for (const auto& [gap, cnt] : rep.gap_counts) gaps.push_back(Json{{"gap", gap}, {"count", cnt}});
    j["gaps"] = std::move(gaps);
    Json hits = Json::array();
    for (const auto& h : rep.forbidden_hits)
        hits.push_back(Json{{"i", h.first}, {"j", h.second}, {"distance", h.distance}});
    j["forbidden_hits"] = std::move(hits);
    if (rep.pattern_longer_than_text) j["warning"] = "pattern longer than text";
    return j;
}

inline Json to_json(const EmpiricalIRC& e) {
    Json j;
    j["level"] = e.level;
    j["sided"] = sided_name(e.sided);
    j["base"] = e.base;
    Json atoms = Json::array();
    for (const auto& [ls, w] : e.atoms) {
        Json cells = Json::array();
        for (const Word& word : ls.cells) cells.push_back(word.str());
        atoms.push_back(Json{{"cells", std::move(cells)}, {"weight", rat_to_string(w)}});
    }
    j["atoms"] = std::move(atoms);
    j["provenance"] = e.provenance;
    return j;
}

inline Json to_json(const OrbitStat& st) {
    Json j;
    j["window"] = st.window;
    j["mode"] = orbit_mode_name(st.mode);
    j["eps"] = "2^-" + std::to_string(st.eps_exp);
    if (st.r) j["r"] = *st.r;
    j["fraction"] = rat_to_string(st.fraction);
    j["hits"] = st.hits;
    j["total"] = st.total;
    j["exhaustive"] = st.exhaustive;
    if (st.wilson95) {
        j["ci_lo"] = st.wilson95->first;
        j["ci_hi"] = st.wilson95->second;
    }
    if (!st.exhaustive) {
        j["samples"] = st.samples;
        j["seed"] = st.seed;
    }
    return j;
}

inline Json to_json(const DilationVerdict& v) {
    Json j;
    j["n"] = v.n.str();
    j["q"] = v.q.str();
    j["m_prime"] = v.m_prime;
    j["max_gap"] = rat_to_string(v.gap);
    j["slack"] = rat_to_string(v.slack);
    j["verdict"] = verdict_name(v.verdict);
    j["ambiguous"] = v.verdict == Verdict::ambiguous;
    return j;
}

}  // namespace irclab
