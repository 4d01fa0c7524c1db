#include "doctest.h"

#include <stdexcept>

#include "fluxlogic/gates.hpp"
#include "support/oracle.hpp"

using namespace fluxlogic;

namespace {

/// Clamps the named inputs, brute-forces the ground states, and returns them.
oracle::BruteGround ground_with(const Network& net,
                                std::initializer_list<std::pair<CellId, Logic>> clamps,
                                EnergyModel model) {
    Network clamped = net;
    for (const auto& [id, v] : clamps) clamped.set_clamp(id, v);
    return oracle::brute_ground(clamped, model);
}

Logic decode(const Network& net, std::initializer_list<std::pair<CellId, Logic>> clamps,
             std::uint64_t state, const CellId& id) {
    Network clamped = net;
    for (const auto& [cid, v] : clamps) clamped.set_clamp(cid, v);
    return oracle::state_value(clamped, state, id);
}

}  // namespace

TEST_CASE("gate parameter validation") {
    const FluxConstants constants;
    GateParams p;
    CHECK_NOTHROW(p.validate(constants));

    SUBCASE("positivity") {
        p.delta = 0.0;
        CHECK_THROWS_AS(p.validate(constants), std::invalid_argument);
        p = GateParams{};
        p.d_bias = -0.1;
        CHECK_THROWS_AS(p.validate(constants), std::invalid_argument);
    }
    SUBCASE("detuning must stay below the coupling margin") {
        p.d_bias = 0.25;  // 2*delta = 0.2
        CHECK_THROWS_AS(p.validate(constants), std::invalid_argument);
    }
    SUBCASE("total drive must stay inside the flux branch") {
        p.delta = 0.24;  // 2*delta = 0.48 > phi0/2 - d_bias = 0.45
        CHECK_THROWS_AS(p.validate(constants), std::invalid_argument);
    }
    SUBCASE("lift strengths are bounded") {
        p.edl_strength = 0.0;
        CHECK_THROWS_AS(p.validate(constants), std::invalid_argument);
        p = GateParams{};
        p.edl_strength = 0.5;
        CHECK_THROWS_AS(p.validate(constants), std::invalid_argument);
        p = GateParams{};
        p.dedlu_strength = 1.0;
        CHECK_THROWS_AS(p.validate(constants), std::invalid_argument);
    }
}

TEST_CASE("input cells") {
    Network net;
    const CellId a = add_input_cell(net, "a");
    CHECK(a == "a");
    CHECK(net.cell("a").role == CellRole::input);
    CHECK(net.cell("a").bias == 0.0);
    CHECK(!net.cell("a").clamp.has_value());
}

TEST_CASE("inverter structure and truth") {
    Network net;
    const GateParams p;
    add_input_cell(net, "a");

    SUBCASE("fanout must be at least one") {
        CHECK_THROWS_AS(inverter(net, "a", 0, p), std::invalid_argument);
    }
    SUBCASE("unknown input is rejected") {
        CHECK_THROWS_AS(inverter(net, "zz", 1, p), std::invalid_argument);
    }
    SUBCASE("output id count must match the fanout") {
        CHECK_THROWS_AS(inverter(net, "a", 2, p, {"only"}), std::invalid_argument);
    }

    SUBCASE("single output") {
        const auto outs = inverter(net, "a", 1, p, {"y"});
        REQUIRE(outs.size() == 1);
        CHECK(outs[0] == "y");
        CHECK(net.cell("y").role == CellRole::output);
        REQUIRE(net.couplings().size() == 1);
        CHECK(net.couplings()[0].strength == doctest::Approx(p.delta));
        REQUIRE(net.gate_annotations().size() == 1);
        CHECK(net.gate_annotations()[0].kind == GateKind::Inv);

        for (const EnergyModel model : {EnergyModel::quadratic, EnergyModel::mismatch}) {
            for (const Logic in : {Logic::zero, Logic::one}) {
                const auto g = ground_with(net, {{"a", in}}, model);
                REQUIRE(g.states.size() == 1);
                CHECK(decode(net, {{"a", in}}, g.states[0], "y") == negated(in));
            }
        }
    }

    SUBCASE("fanout three replicates the complement") {
        const auto outs = inverter(net, "a", 3, p);
        REQUIRE(outs.size() == 3);
        CHECK(net.gate_annotations()[0].kind == GateKind::Fanout);
        for (const EnergyModel model : {EnergyModel::quadratic, EnergyModel::mismatch}) {
            const auto g = ground_with(net, {{"a", Logic::one}}, model);
            REQUIRE(g.states.size() == 1);
            for (const CellId& out : outs)
                CHECK(decode(net, {{"a", Logic::one}}, g.states[0], out) == Logic::zero);
        }
    }
}

TEST_CASE("wire copies its input through two inversions") {
    Network net;
    const GateParams p;
    add_input_cell(net, "a");
    const CellId out = wire(net, "a", p, "z");
    CHECK(out == "z");
    CHECK(net.cell_count() == 3);
    CHECK(net.gate_annotations()[0].kind == GateKind::Wire);
    REQUIRE(net.gate_annotations()[0].internals.size() == 1);

    for (const EnergyModel model : {EnergyModel::quadratic, EnergyModel::mismatch}) {
        for (const Logic in : {Logic::zero, Logic::one}) {
            const auto g = ground_with(net, {{"a", in}}, model);
            REQUIRE(g.states.size() == 1);
            CHECK(decode(net, {{"a", in}}, g.states[0], "z") == in);
        }
    }
}

TEST_CASE("nand/nor pair structure") {
    Network net;
    const GateParams p;
    add_input_cell(net, "a");
    add_input_cell(net, "b");
    const auto outs = nand_nor(net, "a", "b", p, "hi", "lo");

    CHECK(outs.o_nand == "hi");
    CHECK(outs.o_nor == "lo");
    CHECK(net.cell("hi").bias == doctest::Approx(p.d_bias));
    CHECK(net.cell("lo").bias == doctest::Approx(-p.d_bias));
    CHECK(net.couplings().size() == 4);
    for (const Coupling& c : net.couplings()) CHECK(c.strength == doctest::Approx(p.delta));
    REQUIRE(net.gate_annotations().size() == 1);
    CHECK(net.gate_annotations()[0].kind == GateKind::NandNor);
    CHECK(net.gate_annotations()[0].outputs == std::vector<CellId>{"hi", "lo"});
}

TEST_CASE("nand/nor truth rows under both models") {
    Network net;
    const GateParams p;
    add_input_cell(net, "a");
    add_input_cell(net, "b");
    const auto outs = nand_nor(net, "a", "b", p);

    for (const EnergyModel model : {EnergyModel::quadratic, EnergyModel::mismatch}) {
        for (unsigned row = 0; row < 4; ++row) {
            const Logic va = logic_from_bit(row >> 1);
            const Logic vb = logic_from_bit(row & 1);
            const auto g = ground_with(net, {{"a", va}, {"b", vb}}, model);
            REQUIRE(g.states.size() == 1);
            const bool ba = va == Logic::one;
            const bool bb = vb == Logic::one;
            CHECK(decode(net, {{"a", va}, {"b", vb}}, g.states[0], outs.o_nand)
                  == logic_from_bit(!(ba && bb)));
            CHECK(decode(net, {{"a", va}, {"b", vb}}, g.states[0], outs.o_nor)
                  == logic_from_bit(!(ba || bb)));
        }
    }
}

TEST_CASE("symmetrized and / or composites") {
    const GateParams p;
    for (const bool is_and : {true, false}) {
        Network net;
        add_input_cell(net, "a");
        add_input_cell(net, "b");
        const CellId out = is_and ? sand(net, "a", "b", p, "z") : or_gate(net, "a", "b", p, "z");
        CHECK(out == "z");
        REQUIRE(net.gate_annotations().size() == 1);
        CHECK(net.gate_annotations()[0].kind == (is_and ? GateKind::Sand : GateKind::Or));
        CHECK(net.gate_annotations()[0].internals.size() == 2);

        for (const EnergyModel model : {EnergyModel::quadratic, EnergyModel::mismatch}) {
            for (unsigned row = 0; row < 4; ++row) {
                const Logic va = logic_from_bit(row >> 1);
                const Logic vb = logic_from_bit(row & 1);
                const auto g = ground_with(net, {{"a", va}, {"b", vb}}, model);
                REQUIRE(g.states.size() == 1);
                const bool ba = va == Logic::one;
                const bool bb = vb == Logic::one;
                const bool expected = is_and ? (ba && bb) : (ba || bb);
                CHECK(decode(net, {{"a", va}, {"b", vb}}, g.states[0], "z")
                      == logic_from_bit(expected));
            }
        }
    }
}

TEST_CASE("degeneracy lifting") {
    SUBCASE("quadratic lifting shifts the bias toward the favored value") {
        Network net;
        net.add_cell("a");
        edl(net, "a", Logic::zero, 0.05, EnergyModel::quadratic);
        CHECK(net.cell("a").bias == doctest::Approx(-0.05));
        edl(net, "a", Logic::one, 0.2, EnergyModel::quadratic);
        CHECK(net.cell("a").bias == doctest::Approx(0.15));
        CHECK(net.gate_annotations().size() == 2);
        CHECK(net.gate_annotations()[0].kind == GateKind::Edl);
    }
    SUBCASE("mismatch lifting penalizes the disfavored value") {
        Network net;
        net.add_cell("a");
        edl(net, "a", Logic::zero, 0.25, EnergyModel::mismatch);
        CHECK(net.cell("a").mismatch_penalty[1] == doctest::Approx(0.25));
        CHECK(net.cell("a").mismatch_penalty[0] == 0.0);
    }
    SUBCASE("strength must be positive and representable") {
        Network net;
        net.add_cell("a");
        CHECK_THROWS_AS(edl(net, "a", Logic::zero, 0.0, EnergyModel::quadratic),
                        std::invalid_argument);
        CHECK_THROWS_AS(edl(net, "a", Logic::zero, 0.6, EnergyModel::quadratic),
                        std::invalid_argument);  // bias would leave (-phi0/2, phi0/2)
    }
    SUBCASE("decision lifting favors 0 and bounds its mismatch price") {
        Network net;
        net.add_cell("v");
        dedlu(net, "v", 0.5, EnergyModel::mismatch);
        CHECK(net.cell("v").mismatch_penalty[1] == doctest::Approx(0.5));
        CHECK_THROWS_AS(dedlu(net, "v", 1.0, EnergyModel::mismatch), std::invalid_argument);
        dedlu(net, "v", 0.05, EnergyModel::quadratic);
        CHECK(net.cell("v").bias == doctest::Approx(-0.05));
    }
}

TEST_CASE("clause evaluator structure") {
    Network net;
    const GateParams p;
    add_input_cell(net, "x1");
    add_input_cell(net, "x2");

    SUBCASE("positive literals take a feed inverter, negated ones do not") {
        const CellId v = three_ce(net, {"x1", false}, {"x2", true}, {"x1", true}, p, "v");
        CHECK(v == "v");
        const GateHandle& h = net.gate_annotations().back();
        CHECK(h.kind == GateKind::Ce3);
        CHECK(h.inputs == std::vector<CellId>{"x1", "x2"});  // deduplicated
        CHECK(h.outputs == std::vector<CellId>{"v"});
        // One feed inverter (for the positive x1) plus five chain cells.
        CHECK(h.internals.size() == 6);
        CHECK(net.cell("v").role == CellRole::output);
        CHECK(net.cell("v").mismatch_penalty[1] == doctest::Approx(p.dedlu_strength));
        CHECK(net.cell("v").bias == doctest::Approx(-p.edl_strength));
    }

    SUBCASE("the flag detuning must stay below the coupling strength") {
        GateParams strong = p;
        strong.edl_strength = 0.15;  // above delta = 0.1, below phi0/2
        CHECK_THROWS_AS(three_ce(net, {"x1", false}, {"x2", false}, {"x1", false}, strong),
                        std::invalid_argument);
    }

    SUBCASE("unknown variables are rejected") {
        CHECK_THROWS_AS(three_ce(net, {"zz", false}, {"x2", false}, {"x1", false}, p),
                        std::invalid_argument);
    }
}

TEST_CASE("clause evaluator flags exactly the violating rows") {
    const GateParams p;
    // Clause (x1 OR NOT x2 OR x3): the flag must be 1 only at x1=0,x2=1,x3=0.
    Network net;
    add_input_cell(net, "x1");
    add_input_cell(net, "x2");
    add_input_cell(net, "x3");
    const CellId v = three_ce(net, {"x1", false}, {"x2", true}, {"x3", false}, p, "v");

    for (unsigned row = 0; row < 8; ++row) {
        const Logic v1 = logic_from_bit(row >> 2);
        const Logic v2 = logic_from_bit(row >> 1);
        const Logic v3 = logic_from_bit(row);
        const bool satisfied = v1 == Logic::one || v2 == Logic::zero || v3 == Logic::one;
        const auto g = ground_with(net, {{"x1", v1}, {"x2", v2}, {"x3", v3}},
                                   EnergyModel::mismatch);
        REQUIRE(g.states.size() == 1);
        CHECK(decode(net, {{"x1", v1}, {"x2", v2}, {"x3", v3}}, g.states[0], v)
              == logic_from_bit(!satisfied));
        CHECK(g.min_energy == doctest::Approx(satisfied ? 0.0 : p.dedlu_strength));
    }
}
