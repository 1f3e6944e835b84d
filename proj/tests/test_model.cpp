#include <gtest/gtest.h>

#include "support.hpp"

using namespace archopt;
using namespace archopt::testing;

TEST(Validate, WellFormedModelHasNoViolations) { EXPECT_TRUE(validate(two_component_model()).empty()); }

TEST(Validate, MixWeightsMustSumToOne) {
    Architecture a = two_component_model();
    a.scenarios[0].weight = 0.9;
    auto v = validate(a);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].rule, "scenario mix weights must sum to 1");
}

TEST(Validate, MissingDeploymentTargetIsNamed) {
    Architecture a = two_component_model();
    a.deployment["cb"] = "n9";
    auto v = validate(a);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_NE(v[0].to_string().find("n9"), std::string::npos);
}

TEST(Validate, ReportsEachBrokenRule) {
    Architecture a = two_component_model();
    a.components[0].failure_prob = -0.1;
    a.components[1].operations.push_back({"oa", 0.1});  // duplicate op id
    a.nodes[0].cores = 0;
    a.scenarios[0].steps.push_back({"missing", 1.0});
    a.scenarios[0].population = 0;
    auto v = validate(a);
    std::vector<std::string> rules;
    for (const auto& x : v) rules.push_back(x.rule);
    EXPECT_EQ(v.size(), 5u);
    EXPECT_NE(std::find(rules.begin(), rules.end(), "duplicate operation id"), rules.end());
    EXPECT_NE(std::find(rules.begin(), rules.end(), "cores must be >= 1"), rules.end());
}

TEST(Validate, EmptyComponentIsRejected) {
    Architecture a = two_component_model();
    a.components.push_back({"empty", {}, 0.0});
    a.deployment["empty"] = "n1";
    auto v = validate(a);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].element, "component empty");
}

TEST(ModelIo, CaseStudiesRoundTrip) {
    for (std::string name : {"small", "large"}) {
        std::string text = read_file(source_path("models/casestudy-" + name + ".json"));
        Architecture a = load(text);
        EXPECT_EQ(json::parse(save(a)), json::parse(text)) << name;
        EXPECT_EQ(load(save(a)), a) << name;
    }
}

TEST(ModelIo, MissingScenariosNamesPath) {
    json doc = to_json(two_component_model());
    doc.erase("scenarios");
    try {
        load(doc.dump());
        FAIL() << "expected SchemaError";
    } catch (const SchemaError& e) {
        EXPECT_EQ(e.path, "/scenarios");
    }
}

TEST(ModelIo, WrongTypeNamesPath) {
    json doc = to_json(two_component_model());
    doc["nodes"][0]["cores"] = "two";
    try {
        load(doc.dump());
        FAIL() << "expected SchemaError";
    } catch (const SchemaError& e) {
        EXPECT_EQ(e.path, "/nodes/0/cores");
    }
}

TEST(ModelIo, FailureProbabilityOutOfRange) {
    json doc = to_json(two_component_model());
    doc["components"][0]["failure_prob"] = 1.3;
    try {
        load(doc.dump());
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        ASSERT_EQ(e.violations.size(), 1u);
        EXPECT_EQ(e.violations[0].rule, "failure probability must lie in [0,1]");
    }
}

TEST(ModelIo, ParseErrorCarriesLine) {
    try {
        load("{\n  \"components\": [\n  oops\n]}");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(ModelIo, ValidIffSavedDocumentLoads) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        Architecture a = random_architecture(rng);
        // Break roughly half of the models in one of several ways.
        switch (t % 6) {
            case 0: a.scenarios[0].weight += 0.5; break;
            case 1: a.components[0].failure_prob = 2.0; break;
            case 2: a.deployment[a.components[0].id] = "nowhere"; break;
            default: break;
        }
        bool valid = validate(a).empty();
        bool loads = true;
        try {
            (void)load(save(a));
        } catch (const Error&) {
            loads = false;
        }
        EXPECT_EQ(valid, loads);
        EXPECT_EQ(valid, t % 6 > 2);
    }
}

TEST(DemandMatrix, SingleOperation) {
    Architecture a;
    a.components = {{"c", {{"o", 0.2}}, 0.0}};
    a.nodes = {{"n", 1.0, 1}};
    a.scenarios = {{"s", 1.0, 1, 0.0, {{"o", 3.0}}}};
    a.deployment = {{"c", "n"}};
    Matrix d = demand_matrix(a);
    ASSERT_EQ(d.rows, 1u);
    EXPECT_NEAR(d(0, 0), 0.6, 1e-15);

    a.nodes[0].speed = 2.0;
    EXPECT_NEAR(demand_matrix(a)(0, 0), 0.3, 1e-15);

    a.scenarios[0].steps[0].count = 0.0;
    EXPECT_EQ(demand_matrix(a)(0, 0), 0.0);
}

TEST(DemandMatrix, LinearAndInverseInSpeed) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        Architecture a = random_architecture(rng);
        Matrix base = demand_matrix(a);

        Architecture slow = a;
        for (auto& n : slow.nodes) n.speed /= 2.0;
        Matrix d2 = demand_matrix(slow);
        for (std::size_t i = 0; i < base.data.size(); ++i) EXPECT_NEAR(d2.data[i], 2.0 * base.data[i], 1e-12);

        Architecture scaled = a;
        for (auto& c : scaled.components)
            for (auto& o : c.operations) o.cpu_demand *= 3.0;
        for (auto& s : scaled.scenarios)
            for (auto& st : s.steps) st.count *= 0.5;
        Matrix d3 = demand_matrix(scaled);
        for (std::size_t i = 0; i < base.data.size(); ++i) EXPECT_NEAR(d3.data[i], 1.5 * base.data[i], 1e-12);
    }
}

TEST(InvocationMatrix, CoLocatedCallsProduceNoMessages) {
    Architecture a;
    a.components = {{"A", {{"a1", 0.1}}, 0.0}, {"B", {{"b1", 0.1}}, 0.0}};
    a.nodes = {{"n1", 1.0, 1}, {"n2", 1.0, 1}};
    a.links = {{"l", "n1", "n2", 0.0, 0.0}};
    a.scenarios = {{"s", 1.0, 1, 0.0, {{"a1", 1.0}, {"a1", 1.0}, {"b1", 1.0}}}};
    a.deployment = {{"A", "n1"}, {"B", "n1"}};
    Invocations inv = invocation_matrix(a);
    EXPECT_EQ(inv.components(0, 0), 2.0);
    EXPECT_EQ(inv.components(1, 0), 1.0);
    EXPECT_EQ(inv.links(0, 0), 0.0);
}

TEST(InvocationMatrix, CrossNodeCallUsesLink) {
    Architecture a;
    a.components = {{"A", {{"a1", 0.1}}, 0.0}, {"B", {{"b1", 0.1}}, 0.0}};
    a.nodes = {{"n1", 1.0, 1}, {"n2", 1.0, 1}};
    a.links = {{"l", "n1", "n2", 0.0, 0.0}};
    a.scenarios = {{"s", 1.0, 1, 0.0, {{"a1", 1.0}, {"b1", 1.0}}}};
    a.deployment = {{"A", "n1"}, {"B", "n2"}};
    EXPECT_EQ(invocation_matrix(a).links(0, 0), 1.0);

    a.scenarios[0].steps = {{"b1", 4.0}};  // client call only
    EXPECT_EQ(invocation_matrix(a).links(0, 0), 0.0);
}

TEST(InvocationMatrix, MissingLinkNamesNodePair) {
    Architecture a;
    a.components = {{"A", {{"a1", 0.1}}, 0.0}, {"B", {{"b1", 0.1}}, 0.0}};
    a.nodes = {{"n1", 1.0, 1}, {"n2", 1.0, 1}};
    a.scenarios = {{"s", 1.0, 1, 0.0, {{"a1", 1.0}, {"b1", 1.0}}}};
    a.deployment = {{"A", "n1"}, {"B", "n2"}};
    try {
        invocation_matrix(a);
        FAIL();
    } catch (const MissingLinkError& e) {
        EXPECT_EQ(e.node_a, "n1");
        EXPECT_EQ(e.node_b, "n2");
    }
}

TEST(InvocationMatrix, NonNegativeAndZeroForZeroCounts) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 100; ++t) {
        Architecture a = random_architecture(rng);
        Invocations inv = invocation_matrix(a);
        for (double x : inv.components.data) EXPECT_GE(x, 0.0);
        for (double x : inv.links.data) EXPECT_GE(x, 0.0);
        for (auto& s : a.scenarios)
            for (auto& st : s.steps) st.count = 0.0;
        Invocations zero = invocation_matrix(a);
        for (double x : zero.components.data) EXPECT_EQ(x, 0.0);
        for (double x : zero.links.data) EXPECT_EQ(x, 0.0);
    }
}
