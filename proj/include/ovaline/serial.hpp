#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "ovaline/criteria.hpp"
#include "ovaline/field.hpp"
#include "ovaline/gpoly.hpp"
#include "ovaline/gram.hpp"
#include "ovaline/plane.hpp"
#include "ovaline/search.hpp"

namespace ovaline {

using json = nlohmann::json;

std::string to_hex(std::uint32_t v);
std::uint32_t parse_hex(const std::string& s);

// Field description: {"m": 3, "f_poly": "0xb", "delta": "0x1"}.
json field_to_json(const FieldCtx& ctx);

struct FieldSpec {
    std::optional<unsigned> m;
    std::optional<std::uint32_t> f_poly;
    std::optional<std::uint32_t> delta;

    void merge_from(const FieldSpec& overrides);
};
FieldSpec field_spec_from_json(const json& j);
FieldCtx make_ctx(const FieldSpec& spec);  // throws when m is missing

json felem_to_json(FElem v);
FElem felem_from_json(const FieldCtx& ctx, const json& j);
json kelem_to_json(KElem v);  // ["0x<re>", "0x<im>"]
KElem kelem_from_json(const FieldCtx& ctx, const json& j);

json points_to_json(const FieldCtx& ctx, const PointSet& set);
PointSet points_from_json(const FieldCtx& ctx, const json& j);
json points_h_to_json(const std::vector<ProjPointH>& pts);
std::vector<ProjPointH> points_h_from_json(const FieldCtx& ctx, const json& j);

json table_to_json(const FieldCtx& ctx, const GFunctionTable& g);
GFunctionTable table_from_json(const FieldCtx& ctx, const json& j);
json gcoeffs_to_json(const FieldCtx& ctx, const GCoeffs& g);
GCoeffs gcoeffs_from_json(const FieldCtx& ctx, const json& j);

// Typed input files; "type" selects the payload schema.
struct OPolyCoeffs {
    std::vector<FElem> c;
};
struct RhoValues {
    std::vector<FElem> v;
};
using InputPayload =
    std::variant<GFunctionTable, GCoeffs, PointSet, std::vector<ProjPointH>, OPolyCoeffs, RhoValues>;

// Wraps a payload with its type tag and optional field description.
json input_to_json(const FieldCtx& ctx, const InputPayload& payload);
InputPayload input_from_json(const FieldCtx& ctx, const json& j);

json witness_to_json(const FieldCtx& ctx, const Witness& w);
json report_to_json(const FieldCtx& ctx, const CriterionReport& r);
json consensus_to_json(const FieldCtx& ctx, const ConsensusReport& r);
json outcome_to_json(const FieldCtx& ctx, const VerifyOutcome& o);
json spectrum_to_json(const SpectrumReport& r);

// Table emitters for the canonical exponent sets.
std::string dset_csv(const ExponentSets& es);
json dset_json(const ExponentSets& es);
std::string dset_latex(const ExponentSets& es);

json search_config_to_json(const FieldCtx& ctx, const SearchConfig& cfg);
SearchConfig search_config_from_json(const FieldCtx& ctx, const json& j);
json search_outcome_to_json(const FieldCtx& ctx, const SearchConfig& cfg, const SearchOutcome& out);

}  // namespace ovaline
