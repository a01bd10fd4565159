#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>

#include "ovaline/fixtures.hpp"
#include "ovaline/serial.hpp"
#include "test_util.hpp"

using namespace ovaline;
using namespace ovaline::test;

TEST_SUITE("serial") {

TEST_CASE("hex round trips") {
    CHECK(to_hex(0x1f) == "0x1f");
    CHECK(parse_hex("0x1f") == 0x1fu);
    CHECK(parse_hex("1f") == 0x1fu);
    CHECK_THROWS_AS(parse_hex("zzz"), std::invalid_argument);
    CHECK_THROWS_AS(parse_hex("0x1f junk"), std::invalid_argument);
}

TEST_CASE("field context round trip") {
    const auto ctx = FieldCtx::make(3);
    const json j = field_to_json(ctx);
    const FieldCtx back = make_ctx(field_spec_from_json(j));
    CHECK(back.m() == ctx.m());
    CHECK(back.f_poly() == ctx.f_poly());
    CHECK(back.delta() == ctx.delta());

    FieldSpec spec = field_spec_from_json(j);
    FieldSpec over;
    over.m = 4;
    spec.merge_from(over);
    CHECK(*spec.m == 4);

    CHECK_THROWS_AS(make_ctx(FieldSpec{}), std::invalid_argument);
}

TEST_CASE("payload round trips") {
    std::mt19937_64 rng(0x5eed0601);
    const auto ctx = FieldCtx::make(3);

    // g table
    GFunctionTable g;
    for (std::uint32_t j = 0; j <= ctx.q(); ++j) g.values.push_back(random_felem(ctx, rng));
    CHECK(table_from_json(ctx, table_to_json(ctx, g)).values == g.values);

    // coefficients
    const GCoeffs c = g_table_to_coeffs(ctx, g);
    CHECK(gcoeffs_from_json(ctx, gcoeffs_to_json(ctx, c)).a == c.a);

    // points (with an infinite point)
    GFunctionTable gz = g;
    gz.values[3] = F_ZERO;
    const PointSet pts = points_from_g(ctx, gz);
    const PointSet back = points_from_json(ctx, points_to_json(ctx, pts));
    REQUIRE(back.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(back.pts[i] == pts.pts[i]);

    // typed input dispatch
    const InputPayload p1 = input_from_json(ctx, table_to_json(ctx, g));
    CHECK(std::holds_alternative<GFunctionTable>(p1));
    const InputPayload p2 = input_from_json(ctx, points_to_json(ctx, pts));
    CHECK(std::holds_alternative<PointSet>(p2));

    json bad = table_to_json(ctx, g);
    bad["type"] = "nonsense";
    CHECK_THROWS_AS(input_from_json(ctx, bad), std::invalid_argument);
    // out-of-range element
    json oob = table_to_json(ctx, g);
    oob["values"][0] = "0xff";
    CHECK_THROWS_AS(input_from_json(ctx, oob), std::invalid_argument);
}

TEST_CASE("report serialization shapes") {
    const FieldCtx& ctx = fixture_context(8);
    GFunctionTable one{std::vector<FElem>(ctx.q() + 1, F_ONE)};
    const ConsensusReport rep = verify_all(ctx, one);
    const json j = consensus_to_json(ctx, rep);
    CHECK(j.at("verdict").get<bool>());
    CHECK(j.at("unanimous").get<bool>());
    CHECK(j.at("methods").size() == 5);
    for (const json& m : j.at("methods")) {
        CHECK(m.contains("method"));
        CHECK(m.at("verdict").get<bool>());
        CHECK(m.at("witness").is_null());
    }

    // identical inputs produce byte-identical reports
    CHECK(consensus_to_json(ctx, verify_all(ctx, one)).dump() == j.dump());
}

TEST_CASE("dset emitters") {
    const ExponentSets es = compute_exponent_sets(8);
    CHECK(dset_csv(es) == "8,\"1,3,5\",3\n");
    CHECK(dset_latex(es) == "8 & 1, 3, 5 & 3 \\\\\n");
    const json j = dset_json(es);
    CHECK(j.at("q") == 8);
    CHECK(j.at("cardinality") == 3);
    CHECK(j.at("elements") == json::array({1, 3, 5}));
}

TEST_CASE("search config round trip") {
    const FieldCtx& ctx = fixture_context(8);
    SearchConfig cfg;
    cfg.q = 8;
    cfg.free_support = {1, 4};
    cfg.random_mode = true;
    cfg.sample_count = 10;
    cfg.seed = 7;
    cfg.parallel_shards = 3;
    const SearchConfig back = search_config_from_json(ctx, search_config_to_json(ctx, cfg));
    CHECK(back.q == cfg.q);
    CHECK(back.free_support == cfg.free_support);
    CHECK(back.random_mode);
    CHECK(back.sample_count == 10);
    CHECK(back.seed == 7);
    CHECK(back.parallel_shards == 3);
    CHECK(back.coefficient_domain.empty());
}

TEST_CASE("fixture directory loading") {
    const auto dir = std::filesystem::temp_directory_path() / "ovaline_fixture_dir";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);

    const FieldCtx& ctx = fixture_context(4);
    GFunctionTable one{std::vector<FElem>(ctx.q() + 1, F_ONE)};
    json f;
    f["name"] = "external_regular_q4";
    f["q"] = 4;
    f["source"] = "search hit";
    f["expected_verdict"] = true;
    f["payload"] = gcoeffs_to_json(ctx, g_table_to_coeffs(ctx, one));
    std::ofstream(dir / "ext.json") << f.dump();

    const auto loaded = fixtures_from_directory(dir.string());
    REQUIRE(loaded.size() == 1);
    CHECK(loaded[0].name == "external_regular_q4");
    CHECK(loaded[0].expected_verdict);
    const FixtureCheck chk = check_fixture(loaded[0]);
    CHECK(chk.ok);
    std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
