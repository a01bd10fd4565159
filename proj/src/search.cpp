#include "ovaline/search.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "json.hpp"

namespace ovaline {

namespace {

constexpr std::uint64_t kMaxExhaustiveSpace = std::uint64_t(1) << 26;
constexpr std::size_t kRejectSampleCap = 100;

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// One candidate = a_0 choice plus one domain index per free coefficient.
struct Candidate {
    std::size_t a0_idx = 0;
    std::vector<std::size_t> coeff_idx;
};

struct ShardResult {
    StageCounters counters;
    std::vector<SearchHit> hits;
    std::vector<GCoeffs> reject_sample;
    bool resumed = false;
};

std::uint64_t config_key(const FieldCtx& ctx, const SearchConfig& cfg,
                         const std::vector<KElem>& domain) {
    std::uint64_t h = 1469598103934665603ull;
    h = fnv1a(h, cfg.q);
    for (std::uint32_t t : cfg.free_support) h = fnv1a(h, t);
    for (const KElem& v : domain) h = fnv1a(h, ctx.k_encode(v));
    for (const FElem& v : cfg.a0_domain) h = fnv1a(h, v.bits);
    h = fnv1a(h, cfg.random_mode ? 1 : 0);
    h = fnv1a(h, cfg.sample_count);
    h = fnv1a(h, cfg.seed);
    h = fnv1a(h, cfg.parallel_shards);
    return h;
}

nlohmann::json coeffs_to_json(const GCoeffs& g) {
    nlohmann::json arr = nlohmann::json::array();
    for (const KElem& c : g.a) arr.push_back({c.re.bits, c.im.bits});
    return arr;
}

GCoeffs coeffs_from_json(const nlohmann::json& arr) {
    GCoeffs g;
    for (const auto& e : arr)
        g.a.push_back(KElem{FElem{e.at(0).get<std::uint32_t>()}, FElem{e.at(1).get<std::uint32_t>()}});
    return g;
}

}  // namespace

std::uint64_t exhaustive_space_size(const SearchConfig& cfg, std::uint64_t domain_size) {
    std::uint64_t space = cfg.a0_domain.size();
    for (std::size_t s = 0; s < cfg.free_support.size(); ++s) {
        if (space > kMaxExhaustiveSpace * 2) return space;  // avoid overflow, already too big
        space *= domain_size;
    }
    return space;
}

void validate_config(const FieldCtx& ctx, const SearchConfig& cfg) {
    if (cfg.q != ctx.q()) throw std::invalid_argument("config q does not match the field");
    std::set<std::uint32_t> seen;
    for (std::uint32_t t : cfg.free_support) {
        if (t < 1 || t > cfg.q / 2) throw std::invalid_argument("free index outside [1, q/2]");
        if (t % 4 == 2 || t % 4 == 3)
            throw std::invalid_argument("free index violates the support corollary");
        if (!seen.insert(t).second) throw std::invalid_argument("repeated free index");
    }
    if (cfg.a0_domain.empty()) throw std::invalid_argument("empty a_0 domain");
    for (const FElem& v : cfg.a0_domain)
        if (v.bits >= ctx.q()) throw std::invalid_argument("a_0 value outside F");
    const std::uint64_t dom = cfg.coefficient_domain.empty() ? ctx.k_size()
                                                             : cfg.coefficient_domain.size();
    if (cfg.random_mode) {
        if (cfg.sample_count == 0) throw std::invalid_argument("random mode needs sample_count >= 1");
    } else {
        if (cfg.q > 32) throw std::invalid_argument("exhaustive mode supports q <= 32");
        if (exhaustive_space_size(cfg, dom) > kMaxExhaustiveSpace)
            throw std::invalid_argument("exhaustive space too large; restrict the domain or sample");
    }
    if (cfg.parallel_shards == 0) throw std::invalid_argument("parallel_shards must be >= 1");
}

GCoeffs build_candidate(const FieldCtx& ctx, const std::vector<std::uint32_t>& free_support,
                        FElem a0, const std::vector<KElem>& values) {
    const std::uint32_t q = ctx.q();
    if (values.size() != free_support.size())
        throw std::invalid_argument("one value per free index required");
    GCoeffs g{std::vector<KElem>(q + 1, K_ZERO)};
    g.a[0] = KElem{a0, F_ZERO};
    for (std::size_t s = 0; s < free_support.size(); ++s) {
        const std::uint32_t t = free_support[s];
        g.a[t] = values[s];
        g.a[q + 1 - t] = ctx.k_pow(values[s], q);
    }
    return g;
}

std::string point_set_digest(const FieldCtx& ctx, const PointSet& set) {
    std::vector<std::uint64_t> keys;
    keys.reserve(set.pts.size());
    for (const ProjPointK& p : set.pts) keys.push_back(point_key(ctx, p));
    std::sort(keys.begin(), keys.end());
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint64_t k : keys) h = fnv1a(h, k);
    return hex64(h);
}

void dedupe_hits(std::vector<SearchHit>& hits) {
    std::unordered_set<std::string> seen;
    std::vector<SearchHit> out;
    out.reserve(hits.size());
    for (SearchHit& h : hits) {
        if (seen.insert(h.digest).second) out.push_back(std::move(h));
    }
    hits = std::move(out);
}

SearchOutcome run_search(const FieldCtx& ctx, const SearchConfig& cfg,
                         const std::string& checkpoint_path) {
    validate_config(ctx, cfg);
    const std::uint32_t q = ctx.q();

    std::vector<KElem> domain = cfg.coefficient_domain;
    if (domain.empty()) {
        domain.reserve(ctx.k_size());
        for (std::uint64_t enc = 0; enc < ctx.k_size(); ++enc) domain.push_back(ctx.k_decode(enc));
    }

    const ExponentSets es = compute_exponent_sets(q);
    const std::uint64_t key = config_key(ctx, cfg, domain);
    const std::uint32_t shards = cfg.parallel_shards;

    // Random mode draws are fixed up front so the schedule cannot depend on
    // thread interleaving.
    std::vector<Candidate> random_draws;
    if (cfg.random_mode) {
        std::mt19937_64 rng(cfg.seed);
        random_draws.reserve(cfg.sample_count);
        for (std::uint64_t i = 0; i < cfg.sample_count; ++i) {
            Candidate c;
            c.a0_idx = rng() % cfg.a0_domain.size();
            for (std::size_t s = 0; s < cfg.free_support.size(); ++s)
                c.coeff_idx.push_back(rng() % domain.size());
            random_draws.push_back(std::move(c));
        }
    }

    // resume data
    std::vector<ShardResult> results(shards);
    std::vector<bool> done(shards, false);
    if (!checkpoint_path.empty()) {
        std::ifstream in(checkpoint_path);
        if (in) {
            nlohmann::json j;
            in >> j;
            if (j.value("config_key", std::string()) == hex64(key)) {
                for (const auto& [sid, sj] : j.at("shards").items()) {
                    const std::uint32_t s = std::uint32_t(std::stoul(sid));
                    if (s >= shards) continue;
                    ShardResult& r = results[s];
                    r.counters.enumerated = sj.at("enumerated").get<std::uint64_t>();
                    r.counters.vanishing_rejects = sj.at("vanishing").get<std::uint64_t>();
                    r.counters.power_sum_rejects = sj.at("power_sum").get<std::uint64_t>();
                    r.counters.consensus_rejects = sj.at("consensus").get<std::uint64_t>();
                    r.counters.hits_raw = sj.at("hits_raw").get<std::uint64_t>();
                    for (const auto& hj : sj.at("hits")) {
                        SearchHit hit;
                        hit.g = coeffs_from_json(hj);
                        hit.report = verify_all(ctx, g_coeffs_to_table(ctx, hit.g));
                        hit.digest = point_set_digest(ctx, points_from_g(ctx, g_coeffs_to_table(ctx, hit.g)));
                        r.hits.push_back(std::move(hit));
                    }
                    for (const auto& rj : sj.at("reject_sample"))
                        r.reject_sample.push_back(coeffs_from_json(rj));
                    r.resumed = true;
                    done[s] = true;
                }
            }
        }
    }

    std::mutex checkpoint_mu;
    auto write_checkpoint = [&] {
        if (checkpoint_path.empty()) return;
        nlohmann::json j;
        j["config_key"] = hex64(key);
        nlohmann::json shardmap = nlohmann::json::object();
        for (std::uint32_t s = 0; s < shards; ++s) {
            if (!done[s]) continue;
            const ShardResult& r = results[s];
            nlohmann::json sj;
            sj["enumerated"] = r.counters.enumerated;
            sj["vanishing"] = r.counters.vanishing_rejects;
            sj["power_sum"] = r.counters.power_sum_rejects;
            sj["consensus"] = r.counters.consensus_rejects;
            sj["hits_raw"] = r.counters.hits_raw;
            nlohmann::json hits = nlohmann::json::array();
            for (const SearchHit& h : r.hits) hits.push_back(coeffs_to_json(h.g));
            sj["hits"] = std::move(hits);
            nlohmann::json rejects = nlohmann::json::array();
            for (const GCoeffs& g : r.reject_sample) rejects.push_back(coeffs_to_json(g));
            sj["reject_sample"] = std::move(rejects);
            shardmap[std::to_string(s)] = std::move(sj);
        }
        j["shards"] = std::move(shardmap);
        std::ofstream out(checkpoint_path, std::ios::trunc);
        out << j.dump();
    };

    auto process_candidate = [&](const Candidate& c, ShardResult& r) {
        ++r.counters.enumerated;
        std::vector<KElem> values(c.coeff_idx.size());
        for (std::size_t s = 0; s < c.coeff_idx.size(); ++s) values[s] = domain[c.coeff_idx[s]];
        const GCoeffs g = build_candidate(ctx, cfg.free_support, cfg.a0_domain[c.a0_idx], values);
        const GFunctionTable table = g_coeffs_to_table(ctx, g);
        if (!table.nonvanishing()) {
            ++r.counters.vanishing_rejects;
            return;
        }
        std::vector<KElem> ys(q + 1);
        for (std::uint32_t j = 0; j <= q; ++j)
            ys[j] = ctx.k_scale(ctx.unit_circle()[j], ctx.f_inv(table.values[j]));
        for (std::uint64_t d : es.d_cal) {
            if (power_sum(ctx, ys, d) != K_ZERO) {
                ++r.counters.power_sum_rejects;
                if (r.reject_sample.size() < kRejectSampleCap) r.reject_sample.push_back(g);
                return;
            }
        }
        ConsensusReport rep = verify_all(ctx, table);
        if (!rep.verdict) {
            // the power sums said hyperoval; any refusal here is a defect
            ++r.counters.consensus_rejects;
            return;
        }
        ++r.counters.hits_raw;
        SearchHit hit{g, point_set_digest(ctx, points_from_g(ctx, table)), std::move(rep)};
        r.hits.push_back(std::move(hit));
    };

    auto run_shard = [&](std::uint32_t s) {
        ShardResult& r = results[s];
        if (cfg.random_mode) {
            for (std::size_t i = s; i < random_draws.size(); i += shards)
                process_candidate(random_draws[i], r);
        } else if (cfg.free_support.empty()) {
            // no free coefficients: shard by the a_0 index
            Candidate c;
            for (std::size_t a = s; a < cfg.a0_domain.size(); a += shards) {
                c.a0_idx = a;
                process_candidate(c, r);
            }
        } else {
            // candidate order: first free coefficient, remaining coefficients,
            // then a_0, all by ascending domain index
            Candidate c;
            c.coeff_idx.assign(cfg.free_support.size(), 0);
            const std::size_t rest = cfg.free_support.size() - 1;
            for (std::size_t j0 = s; j0 < domain.size(); j0 += shards) {
                c.coeff_idx[0] = j0;
                std::vector<std::size_t> digits(rest, 0);
                bool more = true;
                while (more) {
                    for (std::size_t t = 0; t < rest; ++t) c.coeff_idx[1 + t] = digits[t];
                    for (std::size_t a = 0; a < cfg.a0_domain.size(); ++a) {
                        c.a0_idx = a;
                        process_candidate(c, r);
                    }
                    more = false;
                    for (std::size_t t = rest; t-- > 0;) {
                        if (++digits[t] < domain.size()) {
                            more = true;
                            break;
                        }
                        digits[t] = 0;
                    }
                }
            }
        }
        std::lock_guard<std::mutex> lock(checkpoint_mu);
        done[s] = true;
        write_checkpoint();
    };

    std::vector<std::uint32_t> pending;
    for (std::uint32_t s = 0; s < shards; ++s)
        if (!done[s]) pending.push_back(s);

    const std::uint32_t workers = std::max(1u, std::min<std::uint32_t>(cfg.threads, shards));
    if (workers <= 1 || pending.size() <= 1) {
        for (std::uint32_t s : pending) run_shard(s);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::uint32_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                while (true) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= pending.size()) return;
                    run_shard(pending[i]);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }

    SearchOutcome out;
    for (std::uint32_t s = 0; s < shards; ++s) {
        out.counters += results[s].counters;
        for (SearchHit& h : results[s].hits) out.hits.push_back(std::move(h));
        for (GCoeffs& g : results[s].reject_sample) {
            if (out.stage2_reject_sample.size() < kRejectSampleCap)
                out.stage2_reject_sample.push_back(std::move(g));
        }
        if (results[s].resumed) out.resumed_shards.push_back(s);
    }
    out.hits_before_dedupe = out.hits.size();
    dedupe_hits(out.hits);
    return out;
}

}  // namespace ovaline
