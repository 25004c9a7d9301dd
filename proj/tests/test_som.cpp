#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "rsom/som.hpp"
#include "test_support.hpp"

using namespace rsom;

TEST_CASE("neuron_positions enumerates the lattice row-major") {
    CHECK(neuron_positions(1, 2) == std::vector<GridPos>{{0, 0}, {0, 1}});
    CHECK(neuron_positions(2, 2) == std::vector<GridPos>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    const auto p = neuron_positions(2, 3);
    REQUIRE(p.size() == 6);
    CHECK(p[4] == GridPos{1, 1});
    CHECK_THROWS_AS(neuron_positions(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(neuron_positions(2, 0), std::invalid_argument);
}

TEST_CASE("decay interpolates geometrically between its endpoints") {
    CHECK(decay(0.5, 0.01, 0, 10) == 0.5);
    CHECK(decay(0.5, 0.01, 9, 10) == 0.01);
    CHECK(decay(1.0, 0.01, 5, 11) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(decay(0.7, 0.1, 0, 1) == 0.7);

    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const double end = rng.uniform(0.001, 1.0);
        const double start = end + rng.uniform(0.0, 2.0);
        const std::size_t epochs = 1 + rng.below(50);
        for (std::size_t e = 0; e + 1 < epochs; ++e) CHECK(decay(start, end, e, epochs) >= decay(start, end, e + 1, epochs));
    }
}

TEST_CASE("window is a Gaussian of squared grid distance") {
    CHECK(window({1, 1}, {1, 1}, 0.5, 2.0) == 0.5);
    CHECK(window({0, 0}, {0, 1}, 1.0, 1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    CHECK(std::abs(window({0, 0}, {0, 1}, 1.0, 1.0) - 0.6065306597126334) < 1e-9);
    CHECK(window({0, 0}, {1, 0}, 1.0, 0.05) < 1e-80);

    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const GridPos a{static_cast<int>(rng.below(6)), static_cast<int>(rng.below(6))};
        const GridPos b{static_cast<int>(rng.below(6)), static_cast<int>(rng.below(6))};
        const double eps = rng.uniform(0.01, 1.0);
        const double sigma = rng.uniform(0.5, 4.0);
        const double h = window(a, b, eps, sigma);
        CHECK(h > 0.0);
        CHECK(h <= eps);
        CHECK((h == eps) == (a == b));
        CHECK(h == window(b, a, eps, sigma));
    }
}

TEST_CASE("find_winner picks the nearest weight, lowest index on ties") {
    SomMap two(1, 2, 2, {0, 0, 1, 1});
    const std::vector<double> near_second{0.9, 0.9};
    const std::vector<double> midpoint{0.5, 0.5};
    CHECK(find_winner(near_second, two) == 1);
    CHECK(find_winner(midpoint, two) == 0);

    SomMap three(1, 3, 2, {0, 0, 2, 0, 0, 2});
    const std::vector<double> x{1.2, 0.0};
    CHECK(find_winner(x, three) == 1);

    const std::vector<double> wrong_dim{1.0};
    CHECK_THROWS_AS(find_winner(wrong_dim, two), std::invalid_argument);
}

TEST_CASE("update_weights applies the delta rule") {
    SUBCASE("half step") {
        // eps 0.5 at the winner gives h = 0.5.
        SomMap map(1, 2, 2, {0, 0, 5, 5});
        const std::vector<double> x{1, 1};
        update_weights(map, x, 0, 0.5, 1e-3);
        CHECK(map.weight(0)[0] == 0.5);
        CHECK(map.weight(0)[1] == 0.5);
        CHECK(map.weight(1)[0] == doctest::Approx(5.0));
    }
    SUBCASE("full step lands on the instance") {
        SomMap map(1, 2, 2, {3, -2, 5, 5});
        const std::vector<double> x{1.25, 7.5};
        update_weights(map, x, 0, 1.0, 0.5);
        CHECK(map.weight(0)[0] == 1.25);
        CHECK(map.weight(0)[1] == 7.5);
    }
    SUBCASE("zero step leaves the map alone") {
        SomMap map(2, 2, 1, {1, 2, 3, 4});
        const SomMap before = map;
        const std::vector<double> x{10};
        update_weights(map, x, 3, 0.0, 1.0);
        CHECK(map == before);
    }
    SUBCASE("errors") {
        SomMap map(1, 2, 2, {0, 0, 1, 1});
        const std::vector<double> x{1, 1, 1};
        CHECK_THROWS_AS(update_weights(map, x, 0, 0.5, 1.0), std::invalid_argument);
        const std::vector<double> ok{1, 1};
        CHECK_THROWS_AS(update_weights(map, ok, 2, 0.5, 1.0), std::invalid_argument);
    }
}

TEST_CASE("property: update_weights never moves a weight away from the instance") {
    Rng rng(2024);
    for (int trial = 0; trial < 150; ++trial) {
        const int rows = 1 + static_cast<int>(rng.below(4));
        const int cols = 2 + static_cast<int>(rng.below(4));
        const std::size_t dim = 1 + rng.below(5);
        std::vector<double> w(static_cast<std::size_t>(rows * cols) * dim);
        for (double& v : w) v = rng.uniform(-5, 5);
        SomMap map(rows, cols, dim, w);
        std::vector<double> x(dim);
        for (double& v : x) v = rng.uniform(-5, 5);
        const SomMap before = map;
        const std::size_t winner = rng.below(map.units());
        update_weights(map, x, winner, rng.uniform(0.0, 1.0), rng.uniform(0.1, 3.0));
        for (std::size_t j = 0; j < map.units(); ++j)
            CHECK(squared_distance(map.weight(j), x) <= squared_distance(before.weight(j), x) + 1e-12);
    }
}

TEST_CASE("init_weights samples data points deterministically") {
    Rng rng(3);
    const auto data = testing::random_dataset(rng, 10, 3);
    const auto a = init_weights(data, 4, 7);
    const auto b = init_weights(data, 4, 7);
    CHECK(a == b);
    REQUIRE(a.size() == 12);
    for (std::size_t j = 0; j < 4; ++j) {
        bool found = false;
        for (std::size_t i = 0; i < data.size(); ++i)
            found |= std::equal(data.row(i).begin(), data.row(i).end(), a.begin() + static_cast<long>(j * 3));
        CHECK(found);
    }

    const Dataset repeated(2, {1.5, -2.0, 1.5, -2.0, 1.5, -2.0});
    CHECK(init_weights(repeated, 2, 99) == std::vector<double>{1.5, -2.0, 1.5, -2.0});

    const Dataset three(2, {0, 0, 1, 4, 2, 1});
    const auto w = init_weights(three, 4, 1);
    REQUIRE(w.size() == 8);
    CHECK(w[6] >= 0.0);
    CHECK(w[6] <= 2.0);
    CHECK(w[7] >= 0.0);
    CHECK(w[7] <= 4.0);
    CHECK_THROWS_AS(init_weights(three, 1, 1), std::invalid_argument);
}

TEST_CASE("train with a zero learning rate keeps the initial weights") {
    Rng rng(8);
    const auto data = testing::random_dataset(rng, 30, 2);
    SomConfig config{.rows = 2, .cols = 2, .epochs = 1, .eps_start = 0.0, .eps_end = 0.0,
                     .sigma_start = 1.0, .sigma_end = 1.0, .seed = 17};
    const auto result = train(data, config);
    CHECK(result.map.weights() == init_weights(data, 4, 17));
    REQUIRE(result.trace.size() == 1);
    CHECK(result.trace[0].winners.size() == data.size());
}

TEST_CASE("train converges onto a single repeated instance") {
    const Dataset one(3, {0.25, -1.0, 4.0});
    SomConfig config{.rows = 1, .cols = 2, .epochs = 40, .eps_start = 0.99, .eps_end = 0.9,
                     .sigma_start = 1.0, .sigma_end = 0.5, .seed = 3};
    const auto result = train(one, config);
    const std::size_t winner = find_winner(one.row(0), result.map);
    CHECK(std::sqrt(squared_distance(result.map.weight(winner), one.row(0))) < 1e-6);
}

TEST_CASE("train separates two blobs with a 2-unit map") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        const auto data = testing::two_blobs(seed, 100, 0.02);
        SomConfig config{.rows = 1, .cols = 2, .epochs = 20, .eps_start = 0.5, .eps_end = 0.01,
                         .sigma_start = 1.0, .sigma_end = 0.1, .seed = seed};
        const auto result = train(data, config);
        const std::vector<double> lo{0, 0};
        const std::vector<double> hi{10, 10};
        const double a = std::min(squared_distance(result.map.weight(0), lo), squared_distance(result.map.weight(0), hi));
        const double b = std::min(squared_distance(result.map.weight(1), lo), squared_distance(result.map.weight(1), hi));
        CHECK(std::sqrt(a) < 0.1);
        CHECK(std::sqrt(b) < 0.1);
        CHECK(squared_distance(result.map.weight(0), result.map.weight(1)) > 100.0);
    }
}

TEST_CASE("property: trained weights stay inside the data and initial-weight box") {
    Rng rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dim = 1 + rng.below(3);
        const auto data = testing::random_dataset(rng, 5 + rng.below(40), dim, rng.uniform(0.1, 10));
        SomConfig config{.rows = 1 + static_cast<int>(rng.below(3)), .cols = 2 + static_cast<int>(rng.below(3)),
                         .epochs = 1 + rng.below(5), .eps_start = rng.uniform(0.1, 1.0), .eps_end = 0.01,
                         .sigma_start = 2.0, .sigma_end = 0.5, .seed = rng.next()};
        const auto init = init_weights(data, config.units(), config.seed);
        const auto result = train(data, config);
        for (std::size_t d = 0; d < dim; ++d) {
            double lo = init[d];
            double hi = init[d];
            for (std::size_t j = 0; j < config.units(); ++j) {
                lo = std::min(lo, init[j * dim + d]);
                hi = std::max(hi, init[j * dim + d]);
            }
            for (std::size_t i = 0; i < data.size(); ++i) {
                lo = std::min(lo, data.row(i)[d]);
                hi = std::max(hi, data.row(i)[d]);
            }
            for (std::size_t j = 0; j < config.units(); ++j) {
                CHECK(result.map.weight(j)[d] >= lo - 1e-12);
                CHECK(result.map.weight(j)[d] <= hi + 1e-12);
            }
        }
    }
}

TEST_CASE("train is bitwise deterministic and records the schedule") {
    const auto data = testing::two_blobs(9);
    SomConfig config{.rows = 3, .cols = 3, .epochs = 6, .seed = 41};
    const auto a = train(data, config);
    const auto b = train(data, config);
    CHECK(a.map == b.map);
    REQUIRE(a.trace.size() == 6);
    for (std::size_t e = 0; e < 6; ++e) {
        CHECK(a.trace[e].winners == b.trace[e].winners);
        CHECK(a.trace[e].eps == decay(config.eps_start, config.eps_end, e, 6));
        CHECK(a.trace[e].sigma == decay(config.sigma_start, config.sigma_end, e, 6));
    }
    config.seed = 42;
    CHECK_FALSE(train(data, config).map == a.map);
}

TEST_CASE("SomConfig validation") {
    SomConfig ok;
    CHECK_NOTHROW(ok.validate());
    auto bad = ok;
    bad.rows = 1;
    bad.cols = 1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.epochs = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.eps_start = 0.001;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.eps_start = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.sigma_end = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.sigma_start = 0.1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("Dataset rejects malformed input") {
    CHECK_THROWS_AS(Dataset(0, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(Dataset(2, {}), std::invalid_argument);
    CHECK_THROWS_AS(Dataset(2, {1.0, 2.0, 3.0}), std::invalid_argument);
    CHECK_THROWS_AS(Dataset(1, {std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(Dataset(1, {1.0, 2.0}, {0}), std::invalid_argument);
    CHECK_THROWS_AS(Dataset::from_rows({{1.0, 2.0}, {3.0}}), std::invalid_argument);
}
