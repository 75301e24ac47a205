// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "mgqmc/signed_permutation.hpp"

using namespace mgqmc;

TEST_CASE("identity element maps every majorana to itself", "[signed_permutation]") {
    const SignedPermutation q = SignedPermutation::identity(3);
    const MatrixXd m = q.to_matrix();
    REQUIRE((m - MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(q.det() == 1.0);
}

TEST_CASE("group enumeration at one mode has eight elements", "[signed_permutation]") {
    const auto group = SignedPermutation::enumerate(1);
    REQUIRE(group.size() == 8);
    std::set<std::pair<std::vector<int>, std::vector<int>>> distinct;
    for (const auto& q : group) {
        q.validate();
        distinct.insert({q.perm, q.signs});
    }
    REQUIRE(distinct.size() == 8);
}

TEST_CASE("group enumeration at two modes has 384 elements", "[signed_permutation]") {
    const auto group = SignedPermutation::enumerate(2);
    REQUIRE(group.size() == 384);
    std::set<std::pair<std::vector<int>, std::vector<int>>> distinct;
    int det_plus = 0;
    for (const auto& q : group) {
        q.validate();
        distinct.insert({q.perm, q.signs});
        const double d = q.det();
        REQUIRE((d == 1.0 || d == -1.0));
        if (d == 1.0) ++det_plus;
    }
    REQUIRE(distinct.size() == 384);
    REQUIRE(det_plus == 192);
}

TEST_CASE("random draws are valid orthogonal group elements", "[signed_permutation]") {
    RandomStream rng(13, "borel");
    for (int i = 0; i < 50; ++i) {
        const SignedPermutation q = SignedPermutation::random(4, rng);
        q.validate();
        const MatrixXd m = q.to_matrix();
        REQUIRE((m * m.transpose() - MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-14);
        REQUIRE(q.det() * m.determinant() > 0.0);
    }
}

TEST_CASE("uniform sampling covers the small group evenly", "[signed_permutation]") {
    RandomStream rng(14, "borel");
    std::map<std::pair<std::vector<int>, std::vector<int>>, int> hist;
    const int draws = 16000;
    for (int i = 0; i < draws; ++i) {
        const SignedPermutation q = SignedPermutation::random(1, rng);
        ++hist[{q.perm, q.signs}];
    }
    REQUIRE(hist.size() == 8);
    for (const auto& [key, count] : hist) REQUIRE(std::abs(count - draws / 8) < 300);
}

TEST_CASE("malformed elements are rejected", "[signed_permutation]") {
    SignedPermutation q = SignedPermutation::identity(2);
    q.perm[0] = q.perm[1];
    REQUIRE_THROWS_AS(q.validate(), ConfigError);
    SignedPermutation s = SignedPermutation::identity(2);
    s.signs[2] = 0;
    REQUIRE_THROWS_AS(s.validate(), ConfigError);
}
