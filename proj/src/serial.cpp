#include "ovaline/serial.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ovaline/fixtures.hpp"

namespace ovaline {

std::string to_hex(std::uint32_t v) {
    char buf[16];
    snprintf(buf, sizeof buf, "0x%x", v);
    return buf;
}

std::uint32_t parse_hex(const std::string& s) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(s, &pos, 16);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad hex value: " + s);
    }
    if (pos != s.size() || v > 0xffffffffUL) throw std::invalid_argument("bad hex value: " + s);
    return std::uint32_t(v);
}

json field_to_json(const FieldCtx& ctx) {
    return json{{"m", ctx.m()}, {"f_poly", to_hex(ctx.f_poly())}, {"delta", to_hex(ctx.delta().bits)}};
}

void FieldSpec::merge_from(const FieldSpec& overrides) {
    if (overrides.m) m = overrides.m;
    if (overrides.f_poly) f_poly = overrides.f_poly;
    if (overrides.delta) delta = overrides.delta;
}

FieldSpec field_spec_from_json(const json& j) {
    FieldSpec s;
    if (j.contains("m")) s.m = j.at("m").get<unsigned>();
    if (j.contains("f_poly")) s.f_poly = parse_hex(j.at("f_poly").get<std::string>());
    if (j.contains("delta")) s.delta = parse_hex(j.at("delta").get<std::string>());
    return s;
}

FieldCtx make_ctx(const FieldSpec& spec) {
    if (!spec.m) throw std::invalid_argument("no field given: need m (flag --m or a \"field\" object)");
    std::optional<FElem> delta;
    if (spec.delta) delta = FElem{*spec.delta};
    return FieldCtx::make(*spec.m, spec.f_poly, delta);
}

json felem_to_json(FElem v) { return to_hex(v.bits); }

FElem felem_from_json(const FieldCtx& ctx, const json& j) {
    const FElem v{parse_hex(j.get<std::string>())};
    if (v.bits >= ctx.q()) throw std::invalid_argument("field element out of range");
    return v;
}

json kelem_to_json(KElem v) { return json::array({to_hex(v.re.bits), to_hex(v.im.bits)}); }

KElem kelem_from_json(const FieldCtx& ctx, const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("K element must be a hex pair");
    return KElem{felem_from_json(ctx, j.at(0)), felem_from_json(ctx, j.at(1))};
}

json points_to_json(const FieldCtx& ctx, const PointSet& set) {
    json arr = json::array();
    for (const ProjPointK& p : set.pts) {
        arr.push_back(json{{p.infinite ? "infinite" : "affine", kelem_to_json(p.z)}});
    }
    return json{{"type", "points"}, {"field", field_to_json(ctx)}, {"points", std::move(arr)}};
}

PointSet points_from_json(const FieldCtx& ctx, const json& j) {
    std::vector<ProjPointK> pts;
    for (const json& e : j.at("points")) {
        if (e.contains("affine")) {
            pts.push_back(affine_point(kelem_from_json(ctx, e.at("affine"))));
        } else if (e.contains("infinite")) {
            pts.push_back(infinite_point(ctx, kelem_from_json(ctx, e.at("infinite"))));
        } else {
            throw std::invalid_argument("point must be tagged affine or infinite");
        }
    }
    return make_point_set(ctx, std::move(pts));
}

json points_h_to_json(const std::vector<ProjPointH>& pts) {
    json arr = json::array();
    for (const ProjPointH& p : pts)
        arr.push_back(json::array({to_hex(p.x.bits), to_hex(p.y.bits), to_hex(p.z.bits)}));
    return arr;
}

std::vector<ProjPointH> points_h_from_json(const FieldCtx& ctx, const json& j) {
    std::vector<ProjPointH> pts;
    for (const json& e : j) {
        if (!e.is_array() || e.size() != 3) throw std::invalid_argument("homogeneous point must be a triple");
        pts.push_back(point_h(ctx, felem_from_json(ctx, e.at(0)), felem_from_json(ctx, e.at(1)),
                              felem_from_json(ctx, e.at(2))));
    }
    return pts;
}

json table_to_json(const FieldCtx& ctx, const GFunctionTable& g) {
    json arr = json::array();
    for (const FElem& v : g.values) arr.push_back(felem_to_json(v));
    return json{{"type", "g_table"}, {"field", field_to_json(ctx)}, {"values", std::move(arr)}};
}

GFunctionTable table_from_json(const FieldCtx& ctx, const json& j) {
    GFunctionTable g;
    for (const json& e : j.at("values")) g.values.push_back(felem_from_json(ctx, e));
    if (g.values.size() != ctx.q() + 1)
        throw std::invalid_argument("g table needs exactly q+1 values (unit-circle order)");
    return g;
}

json gcoeffs_to_json(const FieldCtx& ctx, const GCoeffs& g) {
    json arr = json::array();
    for (const KElem& c : g.a) arr.push_back(kelem_to_json(c));
    return json{{"type", "g_coeffs"}, {"field", field_to_json(ctx)}, {"coeffs", std::move(arr)}};
}

GCoeffs gcoeffs_from_json(const FieldCtx& ctx, const json& j) {
    GCoeffs g;
    for (const json& e : j.at("coeffs")) g.a.push_back(kelem_from_json(ctx, e));
    validate_gcoeffs(ctx, g);
    return g;
}

json input_to_json(const FieldCtx& ctx, const InputPayload& payload) {
    if (const auto* t = std::get_if<GFunctionTable>(&payload)) return table_to_json(ctx, *t);
    if (const auto* g = std::get_if<GCoeffs>(&payload)) return gcoeffs_to_json(ctx, *g);
    if (const auto* p = std::get_if<PointSet>(&payload)) return points_to_json(ctx, *p);
    if (const auto* h = std::get_if<std::vector<ProjPointH>>(&payload)) {
        return json{{"type", "points_h"}, {"field", field_to_json(ctx)}, {"points", points_h_to_json(*h)}};
    }
    if (const auto* o = std::get_if<OPolyCoeffs>(&payload)) {
        json arr = json::array();
        for (const FElem& v : o->c) arr.push_back(felem_to_json(v));
        return json{{"type", "opoly"}, {"field", field_to_json(ctx)}, {"coeffs", std::move(arr)}};
    }
    const auto& r = std::get<RhoValues>(payload);
    json arr = json::array();
    for (const FElem& v : r.v) arr.push_back(felem_to_json(v));
    return json{{"type", "rho_table"}, {"field", field_to_json(ctx)}, {"values", std::move(arr)}};
}

InputPayload input_from_json(const FieldCtx& ctx, const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "g_table") return table_from_json(ctx, j);
    if (type == "g_coeffs") return gcoeffs_from_json(ctx, j);
    if (type == "points") return points_from_json(ctx, j);
    if (type == "points_h") return points_h_from_json(ctx, j.at("points"));
    if (type == "opoly") {
        OPolyCoeffs o;
        for (const json& e : j.at("coeffs")) o.c.push_back(felem_from_json(ctx, e));
        return o;
    }
    if (type == "rho_table") {
        RhoValues r;
        for (const json& e : j.at("values")) r.v.push_back(felem_from_json(ctx, e));
        if (r.v.size() != ctx.q() + 1) throw std::invalid_argument("rho table needs q+1 values");
        return r;
    }
    throw std::invalid_argument("unknown input type: " + type);
}

json witness_to_json(const FieldCtx&, const Witness& w) {
    if (std::holds_alternative<std::monostate>(w)) return nullptr;
    if (const auto* e = std::get_if<WitnessExponent>(&w)) return json{{"kind", "exponent"}, {"d", e->d}};
    if (const auto* l = std::get_if<WitnessLine>(&w)) {
        return json{{"kind", "line"},
                    {"alpha", kelem_to_json(l->line.alpha)},
                    {"beta", felem_to_json(l->line.beta)},
                    {"count", l->count}};
    }
    if (const auto* b = std::get_if<WitnessB>(&w))
        return json{{"kind", "b"}, {"b", kelem_to_json(b->b)}, {"count", b->count}};
    if (const auto* c = std::get_if<WitnessCoeff>(&w))
        return json{{"kind", "coeff"}, {"i", c->i}, {"k", c->k}, {"index", c->index}};
    if (const auto* r = std::get_if<WitnessRowSum>(&w))
        return json{{"kind", "row_sum"}, {"row", r->row}, {"k", r->k}};
    if (const auto* v = std::get_if<WitnessBracket>(&w))
        return json{{"kind", "bracket"}, {"v", kelem_to_json(v->v)}, {"k", v->k}};
    if (const auto* d = std::get_if<DirectionCollision>(&w)) {
        auto pt = [&](const ProjPointK& p) {
            return json{{p.infinite ? "infinite" : "affine", kelem_to_json(p.z)}};
        };
        return json{{"kind", "direction_collision"},
                    {"first", pt(d->first)},
                    {"second", pt(d->second)},
                    {"direction", kelem_to_json(d->direction)}};
    }
    const auto& msg = std::get<WitnessMessage>(w);
    return json{{"kind", "message"}, {"text", msg.text}};
}

json report_to_json(const FieldCtx& ctx, const CriterionReport& r) {
    return json{{"method", method_name(r.method)},
                {"verdict", r.verdict},
                {"witness", witness_to_json(ctx, r.witness)}};
}

json consensus_to_json(const FieldCtx& ctx, const ConsensusReport& r) {
    json methods = json::array();
    for (const CriterionReport& m : r.methods) methods.push_back(report_to_json(ctx, m));
    return json{{"verdict", r.verdict},
                {"unanimous", r.unanimous},
                {"normalize_failed", r.normalize_failed},
                {"normalize_c", r.normalize_failed ? json(nullptr) : kelem_to_json(r.normalize_c)},
                {"methods", std::move(methods)}};
}

json outcome_to_json(const FieldCtx& ctx, const VerifyOutcome& o) {
    json j = consensus_to_json(ctx, o.report);
    j["collision"] = o.collision ? witness_to_json(ctx, Witness{*o.collision}) : json(nullptr);
    j["translated_by"] = o.translated_by ? kelem_to_json(*o.translated_by) : json(nullptr);
    return j;
}

json spectrum_to_json(const SpectrumReport& r) {
    auto poly = [](const FPoly& p) {
        json arr = json::array();
        for (const FElem& c : p) arr.push_back(felem_to_json(c));
        return arr;
    };
    return json{{"trace", felem_to_json(r.trace)},
                {"rank", r.rank},
                {"kernel_dim", r.kernel_dim},
                {"mu0", felem_to_json(r.mu0)},
                {"char_poly", poly(r.charpoly)},
                {"min_poly", poly(r.minpoly)},
                {"char_shape_ok", r.char_shape_ok},
                {"min_shape_ok", r.min_shape_ok},
                {"eigen_checks_passed", r.eigen_ok},
                {"all_ok", r.all_ok()}};
}

std::string dset_csv(const ExponentSets& es) {
    std::ostringstream os;
    os << es.q << ",\"";
    for (std::size_t i = 0; i < es.d_cal.size(); ++i) {
        if (i) os << ",";
        os << es.d_cal[i];
    }
    os << "\"," << es.d_cal.size() << "\n";
    return os.str();
}

json dset_json(const ExponentSets& es) {
    return json{{"q", es.q}, {"elements", es.d_cal}, {"cardinality", es.d_cal.size()}};
}

std::string dset_latex(const ExponentSets& es) {
    std::ostringstream os;
    os << es.q << " & ";
    for (std::size_t i = 0; i < es.d_cal.size(); ++i) {
        if (i) os << ", ";
        os << es.d_cal[i];
    }
    os << " & " << es.d_cal.size() << " \\\\\n";
    return os.str();
}

json search_config_to_json(const FieldCtx&, const SearchConfig& cfg) {
    json j;
    j["q"] = cfg.q;
    j["free_support"] = cfg.free_support;
    if (cfg.coefficient_domain.empty()) {
        j["coefficient_domain"] = "all";
    } else {
        json arr = json::array();
        for (const KElem& v : cfg.coefficient_domain) arr.push_back(kelem_to_json(v));
        j["coefficient_domain"] = std::move(arr);
    }
    json a0 = json::array();
    for (const FElem& v : cfg.a0_domain) a0.push_back(felem_to_json(v));
    j["a0_domain"] = std::move(a0);
    if (cfg.random_mode) {
        j["mode"] = json{{"random", json{{"samples", cfg.sample_count}, {"seed", cfg.seed}}}};
    } else {
        j["mode"] = "exhaustive";
    }
    j["parallel_shards"] = cfg.parallel_shards;
    return j;
}

SearchConfig search_config_from_json(const FieldCtx& ctx, const json& j) {
    SearchConfig cfg;
    cfg.q = j.at("q").get<std::uint32_t>();
    if (j.contains("free_support"))
        cfg.free_support = j.at("free_support").get<std::vector<std::uint32_t>>();
    if (j.contains("coefficient_domain") && j.at("coefficient_domain").is_array()) {
        for (const json& e : j.at("coefficient_domain"))
            cfg.coefficient_domain.push_back(kelem_from_json(ctx, e));
    }
    if (j.contains("a0_domain")) {
        cfg.a0_domain.clear();
        for (const json& e : j.at("a0_domain")) cfg.a0_domain.push_back(felem_from_json(ctx, e));
    }
    if (j.contains("mode") && j.at("mode").is_object()) {
        const json& r = j.at("mode").at("random");
        cfg.random_mode = true;
        cfg.sample_count = r.at("samples").get<std::uint64_t>();
        if (r.contains("seed")) cfg.seed = r.at("seed").get<std::uint64_t>();
    }
    if (j.contains("parallel_shards")) cfg.parallel_shards = j.at("parallel_shards").get<std::uint32_t>();
    if (j.contains("threads")) cfg.threads = j.at("threads").get<std::uint32_t>();
    return cfg;
}

json search_outcome_to_json(const FieldCtx& ctx, const SearchConfig& cfg, const SearchOutcome& out) {
    json j;
    j["config"] = search_config_to_json(ctx, cfg);
    j["counters"] = json{{"enumerated", out.counters.enumerated},
                         {"vanishing_rejects", out.counters.vanishing_rejects},
                         {"power_sum_rejects", out.counters.power_sum_rejects},
                         {"consensus_rejects", out.counters.consensus_rejects},
                         {"hits_raw", out.counters.hits_raw},
                         {"hits_deduped", out.hits.size()}};
    json hits = json::array();
    for (const SearchHit& h : out.hits) {
        json e;
        e["coeffs"] = gcoeffs_to_json(ctx, h.g)["coeffs"];
        e["digest"] = h.digest;
        e["verdict"] = h.report.verdict;
        hits.push_back(std::move(e));
    }
    j["hits"] = std::move(hits);
    if (!out.resumed_shards.empty()) j["resumed_shards"] = out.resumed_shards;
    return j;
}

std::vector<Fixture> fixtures_from_directory(const std::string& dir) {
    std::vector<Fixture> fs;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
        std::ifstream in(path);
        json j;
        in >> j;
        Fixture f;
        f.name = j.at("name").get<std::string>();
        f.q = j.at("q").get<std::uint32_t>();
        f.source = j.value("source", "external");
        f.expected_verdict = j.at("expected_verdict").get<bool>();
        const FieldCtx& ctx = fixture_context(f.q);
        const json& payload = j.at("payload");
        const std::string type = payload.at("type").get<std::string>();
        if (type == "g_coeffs") {
            f.payload = gcoeffs_from_json(ctx, payload);
        } else if (type == "points") {
            f.payload = points_from_json(ctx, payload);
        } else {
            throw std::invalid_argument("fixture payload must be g_coeffs or points: " + path.string());
        }
        fs.push_back(std::move(f));
    }
    return fs;
}

}  // namespace ovaline
