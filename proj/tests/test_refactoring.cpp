#include <gtest/gtest.h>

#include "support.hpp"

using namespace archopt;
using namespace archopt::testing;

namespace {

Architecture three_nodes() {
    Architecture a;
    a.components = {{"A", {{"a1", 0.1}, {"a2", 0.05}}, 0.01}, {"B", {{"b1", 0.2}}, 0.02}};
    a.nodes = {{"n1", 1.0, 1}, {"n2", 2.0, 1}, {"n3", 1.0, 2}};
    a.links = {{"l12", "n1", "n2", 0.001, 0.002}, {"l13", "n1", "n3", 0.0, 0.0}, {"l23", "n2", "n3", 0.0, 0.0}};
    a.scenarios = {{"s", 1.0, 5, 1.0, {{"a1", 1.0}, {"b1", 2.0}, {"a2", 1.0}}}};
    a.deployment = {{"A", "n1"}, {"B", "n1"}};
    return a;
}

// Total cpu demand (count x operation demand) per scenario, independent of
// placement and node speeds.
std::vector<double> weighted_demand(const Architecture& a) {
    std::map<std::string, double> cpu;
    for (const auto& c : a.components)
        for (const auto& o : c.operations) cpu[o.id] = o.cpu_demand;
    std::vector<double> out;
    for (const auto& s : a.scenarios) {
        double w = 0.0;
        for (const auto& st : s.steps) w += st.count * cpu.at(st.operation);
        out.push_back(w);
    }
    return out;
}

}  // namespace

TEST(Actions, RedeployToSameNodeIsInfeasible) {
    auto f = is_feasible(three_nodes(), RedeployComponent{"A", "n1"});
    EXPECT_FALSE(f);
    EXPECT_EQ(f.reason, "target equals current node");
}

TEST(Actions, RedeployMovesComponentOnly) {
    Architecture a = three_nodes();
    Architecture b = apply(a, RedeployComponent{"B", "n2"});
    EXPECT_EQ(b.deployment.at("B"), "n2");
    EXPECT_EQ(b.components, a.components);
    EXPECT_EQ(a.deployment.at("B"), "n1");
}

TEST(Actions, RedeployToNewNodeCopiesTemplate) {
    Architecture b = apply(three_nodes(), RedeployComponent{"B", "new-node:n2"}, 2);
    ASSERT_EQ(b.nodes.size(), 4u);
    const auto& fresh = b.nodes.back();
    EXPECT_EQ(fresh.id, "n2~2");
    EXPECT_EQ(fresh.speed, 2.0);
    EXPECT_EQ(b.deployment.at("B"), "n2~2");
    EXPECT_TRUE(validate(b).empty());
    // fresh node is linked to every node its template reaches, plus the template
    std::set<std::string> peers;
    for (const auto& l : b.links)
        if (l.a == "n2~2") peers.insert(l.b);
        else if (l.b == "n2~2") peers.insert(l.a);
    EXPECT_EQ(peers, (std::set<std::string>{"n1", "n2", "n3"}));
}

TEST(Actions, MoveOperationToExistingComponent) {
    Architecture b = apply(three_nodes(), MoveOperationToComponent{"a2", "B"});
    ASSERT_EQ(b.components.size(), 2u);
    EXPECT_EQ(b.components[0].operations.size(), 1u);
    EXPECT_EQ(b.components[1].operations.back().id, "a2");
    EXPECT_FALSE(is_feasible(three_nodes(), MoveOperationToComponent{"a2", "A"}));
    EXPECT_FALSE(is_feasible(three_nodes(), MoveOperationToComponent{"zz", "A"}));
}

TEST(Actions, MovingLastOperationDropsComponent) {
    Architecture b = apply(three_nodes(), MoveOperationToComponent{"b1", "A"});
    ASSERT_EQ(b.components.size(), 1u);
    EXPECT_FALSE(b.deployment.contains("B"));
    EXPECT_TRUE(validate(b).empty());
}

TEST(Actions, MoveOperationToNewComponent) {
    Architecture b = apply(three_nodes(), MoveOperationToNewComponent{"a1", "n3"}, 1);
    ASSERT_EQ(b.components.size(), 3u);
    EXPECT_EQ(b.components.back().id, "A~1");
    EXPECT_EQ(b.components.back().failure_prob, 0.01);
    EXPECT_EQ(b.deployment.at("A~1"), "n3");
    EXPECT_FALSE(is_feasible(three_nodes(), MoveOperationToNewComponent{"a1", "new-node:n1"}));
}

TEST(Actions, FreshIdsAvoidCollisions) {
    Architecture a = three_nodes();
    a.components.push_back({"A~0", {{"x", 0.1}}, 0.0});
    a.deployment["A~0"] = "n2";
    Architecture b = apply(a, MoveOperationToNewComponent{"a1", "n3"}, 0);
    EXPECT_TRUE(b.deployment.contains("A~0~"));
}

TEST(Actions, CloneSplitsLoadEvenly) {
    Architecture a = three_nodes();
    Architecture b = apply(a, CloneComponent{"B", "n2"}, 0);
    ASSERT_EQ(b.components.size(), 3u);
    EXPECT_EQ(b.components[2].id, "B~0");
    EXPECT_EQ(b.components[1].replica_group, "B");
    EXPECT_EQ(b.components[2].replica_group, "B");
    EXPECT_EQ(b.components[2].failure_prob, 0.02);

    Invocations inv = invocation_matrix(b);
    EXPECT_DOUBLE_EQ(inv.components(1, 0), 1.0);
    EXPECT_DOUBLE_EQ(inv.components(2, 0), 1.0);
    // B on n1 is local; the replica on n2 is reached over l12 and returns to A on n1
    EXPECT_DOUBLE_EQ(inv.links(0, 0), 1.0 + 0.5);

    Matrix d = demand_matrix(b);
    EXPECT_NEAR(d(0, 0), 0.1 + 0.05 + 0.2, 1e-12);
    EXPECT_NEAR(d(1, 0), 0.2 / 2.0, 1e-12);
}

TEST(Actions, SecondCloneRebalancesThreeWays) {
    Architecture a = three_nodes();
    Architecture b = apply(a, CloneComponent{"B", "n2"}, 0);
    Architecture c = apply(b, CloneComponent{"B", "n3"}, 1);
    Invocations inv = invocation_matrix(c);
    double total = 0.0;
    for (std::size_t i = 0; i < c.components.size(); ++i)
        if (c.components[i].group_id() == "B") {
            EXPECT_NEAR(inv.components(i, 0), 2.0 / 3.0, 1e-12);
            total += inv.components(i, 0);
        }
    EXPECT_NEAR(total, 2.0, 1e-12);
    EXPECT_NEAR(weighted_demand(c)[0], weighted_demand(a)[0], 1e-12);
}

TEST(Actions, MissingLinkMakesActionInfeasible) {
    Architecture a = three_nodes();
    a.links.pop_back();  // no n2-n3 link
    a.deployment["A"] = "n2";
    a.links.erase(a.links.begin());  // no n1-n2 link
    a.deployment["B"] = "n2";
    ASSERT_TRUE(validate(a).empty());
    auto f = is_feasible(a, RedeployComponent{"B", "n3"});
    EXPECT_FALSE(f);
    EXPECT_NE(f.reason.find("no network link"), std::string::npos);
}

TEST(Sequences, InfeasibleIndexIsReported) {
    RefactoringSequence seq{{RedeployComponent{"B", "n2"}, RedeployComponent{"B", "n2"}}};
    try {
        apply_sequence(three_nodes(), seq);
        FAIL();
    } catch (const InfeasibleAction& e) {
        EXPECT_EQ(e.index, 1u);
    }
}

TEST(Sequences, DistanceSumsFactors) {
    RefactoringSequence seq{{CloneComponent{"B", "n2"}, MoveOperationToNewComponent{"a1", "n3"},
                             MoveOperationToComponent{"a2", "B"}, RedeployComponent{"A", "n2"}}};
    EXPECT_NEAR(distance(seq, BrfTable{}), 1.23 + 1.80 + 1.64 + 1.45, 1e-12);
    EXPECT_EQ(distance(RefactoringSequence{}, BrfTable{}), 0.0);
    RefactoringSequence longer = seq;
    longer.actions.push_back(RedeployComponent{"B", "n1"});
    EXPECT_GT(distance(longer, BrfTable{}), distance(seq, BrfTable{}));
}

TEST(Sequences, TextAndJsonRoundTrip) {
    std::mt19937_64 rng(5);
    Architecture a = case_study("large");
    for (int t = 0; t < 50; ++t) {
        RefactoringSequence seq = random_sequence(a, 5, rng);
        EXPECT_EQ(sequence_from_text(to_text(seq)), seq);
        EXPECT_EQ(sequence_from_json(to_json(seq)), seq);
    }
    EXPECT_THROW(sequence_from_text("Frobnicate(a,b)"), Error);
}

TEST(Sequences, CaseStudySequenceFileApplies) {
    Architecture a = case_study("small");
    auto seq = load_sequence(read_file(source_path("models/casestudy-small.sequence.json")));
    EXPECT_EQ(seq.actions.size(), 4u);
    EXPECT_TRUE(validate(apply_sequence(a, seq)).empty());
}

TEST(Sequences, RandomFeasibleSequencesConserveDemand) {
    std::mt19937_64 rng(99);
    for (std::string name : {"small", "large"}) {
        Architecture a = case_study(name);
        auto before = weighted_demand(a);
        for (int t = 0; t < 200; ++t) {
            RefactoringSequence seq = random_sequence(a, 1 + t % 6, rng);
            Architecture b = apply_sequence(a, seq);
            EXPECT_TRUE(validate(b).empty());
            auto after = weighted_demand(b);
            for (std::size_t j = 0; j < before.size(); ++j) EXPECT_NEAR(after[j], before[j], 1e-9);
            EXPECT_EQ(apply_sequence(a, seq), b);  // deterministic
        }
    }
}

TEST(Sequences, RandomActionOnRandomModels) {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 100; ++t) {
        Architecture a = random_architecture(rng);
        RefactoringSequence seq;
        try {
            seq = random_sequence(a, 3, rng);
        } catch (const NoFeasibleAction&) {
            continue;
        }
        EXPECT_TRUE(validate(apply_sequence(a, seq)).empty());
    }
}

TEST(Sequences, RepairKeepsFeasiblePrefix) {
    std::mt19937_64 rng(3);
    Architecture a = three_nodes();
    RefactoringSequence seq{{RedeployComponent{"B", "n2"}, RedeployComponent{"B", "n2"}, RedeployComponent{"A", "n3"}}};
    RefactoringSequence fixed = repair(a, seq, rng);
    EXPECT_EQ(fixed.actions[0], seq.actions[0]);
    EXPECT_NE(fixed.actions[1], seq.actions[1]);
    EXPECT_NO_THROW(apply_sequence(a, fixed));
}
