#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ovaline/criteria.hpp"
#include "ovaline/gpoly.hpp"

namespace ovaline {

// Candidate space: a_0 ranges over a0_domain, each free index t gets a value
// from coefficient_domain with a_{q+1-t} forced by conjugate symmetry, and
// every other coefficient is zero. Free indices live in [1, q/2] with
// t mod 4 in {0,1}, so candidates obey the support corollary by construction.
struct SearchConfig {
    std::uint32_t q = 0;
    std::vector<std::uint32_t> free_support;
    std::vector<KElem> coefficient_domain;  // empty means all of K
    std::vector<FElem> a0_domain{F_ZERO, F_ONE};
    bool random_mode = false;
    std::uint64_t sample_count = 0;  // random mode only
    std::uint64_t seed = 0;
    std::uint32_t parallel_shards = 1;
    std::uint32_t threads = 1;
};

struct StageCounters {
    std::uint64_t enumerated = 0;
    std::uint64_t vanishing_rejects = 0;
    std::uint64_t power_sum_rejects = 0;
    std::uint64_t consensus_rejects = 0;
    std::uint64_t hits_raw = 0;

    std::uint64_t sum() const {
        return vanishing_rejects + power_sum_rejects + consensus_rejects + hits_raw;
    }
    StageCounters& operator+=(const StageCounters& o) {
        enumerated += o.enumerated;
        vanishing_rejects += o.vanishing_rejects;
        power_sum_rejects += o.power_sum_rejects;
        consensus_rejects += o.consensus_rejects;
        hits_raw += o.hits_raw;
        return *this;
    }
};

struct SearchHit {
    GCoeffs g;
    std::string digest;  // canonical hash of the sorted point set
    ConsensusReport report;
};

struct SearchOutcome {
    StageCounters counters;
    std::vector<SearchHit> hits;  // deduplicated by digest, deterministic order
    std::uint64_t hits_before_dedupe = 0;
    std::vector<GCoeffs> stage2_reject_sample;  // up to 100, for re-audits
    std::vector<std::uint32_t> resumed_shards;
};

// Throws std::invalid_argument for malformed configs (support outside the
// corollary window, exhaustive space above 2^26, ...).
void validate_config(const FieldCtx& ctx, const SearchConfig& cfg);
std::uint64_t exhaustive_space_size(const SearchConfig& cfg, std::uint64_t domain_size);

GCoeffs build_candidate(const FieldCtx& ctx, const std::vector<std::uint32_t>& free_support,
                        FElem a0, const std::vector<KElem>& values);

// Filter cascade per candidate: nonvanishing table, then canonical power
// sums in ascending order with early exit, then full multi-verifier
// confirmation. Shards partition the space by the first free coefficient's
// domain index; an optional checkpoint file makes completed shards
// resumable.
SearchOutcome run_search(const FieldCtx& ctx, const SearchConfig& cfg,
                         const std::string& checkpoint_path = {});

std::string point_set_digest(const FieldCtx& ctx, const PointSet& set);
void dedupe_hits(std::vector<SearchHit>& hits);

}  // namespace ovaline
