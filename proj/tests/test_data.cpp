#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "nnaf/data.hpp"

using namespace nnaf;

namespace {

const std::filesystem::path data_dir = NNAF_DATA_DIR;

Dataset load(Schema s)
{
    return load_csv(data_dir / file_name(s), s);
}

void check_partition(const Dataset& ds, const FoldPlan& plan)
{
    REQUIRE(plan.assignment.size() == ds.size());
    std::multiset<std::size_t> seen;
    for (std::size_t f = 0; f < plan.k; ++f) {
        const auto test = plan.test_indices(f);
        const auto train = plan.train_indices(f);
        CHECK(test.size() + train.size() == ds.size());
        seen.insert(test.begin(), test.end());
    }
    CHECK(seen.size() == ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i)
        CHECK(seen.count(i) == 1);
}

void check_stratified(const Dataset& ds, const FoldPlan& plan)
{
    std::vector<std::size_t> class_total(ds.class_count, 0);
    for (auto l : ds.labels)
        ++class_total[l];
    for (std::size_t c = 0; c < ds.class_count; ++c) {
        std::vector<std::size_t> per_fold(plan.k, 0);
        for (std::size_t i = 0; i < ds.size(); ++i)
            if (ds.labels[i] == c)
                ++per_fold[plan.assignment[i]];
        const auto [lo, hi] = std::minmax_element(per_fold.begin(), per_fold.end());
        CHECK(*hi - *lo <= 1);
        // Deviation from the proportional share is below one sample.
        const double share = static_cast<double>(class_total[c]) / static_cast<double>(plan.k);
        for (auto n : per_fold)
            CHECK(std::abs(static_cast<double>(n) - share) < 1.0);
    }
}

}  // namespace

TEST_CASE("the three UCI files load with their canonical shapes")
{
    const Dataset iris = load(Schema::Iris);
    CHECK(iris.size() == 150);
    CHECK(iris.n_features == 4);
    CHECK(iris.class_count == 3);
    const Dataset wdbc = load(Schema::Wdbc);
    CHECK(wdbc.size() == 569);
    CHECK(wdbc.n_features == 30);
    CHECK(wdbc.class_count == 2);
    CHECK(std::count(wdbc.labels.begin(), wdbc.labels.end(), 1u) == 212);
    const Dataset wine = load(Schema::Wine);
    CHECK(wine.size() == 178);
    CHECK(wine.n_features == 13);
    CHECK(wine.class_count == 3);
    for (const auto* ds : {&iris, &wdbc, &wine})
        for (auto l : ds->labels)
            CHECK(l < ds->class_count);
}

TEST_CASE("schema-specific parsing")
{
    const auto w = parse_csv("842302,M,1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23,24,25,26,27,28,29,30\n"
                             "842517,B,1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23,24,25,26,27,28,29,30\n",
                             Schema::Wdbc);
    CHECK(w.labels == std::vector<std::size_t>{1, 0});
    CHECK(w.row(0)[0] == 1.0);  // ID column dropped
    CHECK(w.row(0)[29] == 30.0);

    const auto wine = parse_csv("3,1,2,3,4,5,6,7,8,9,10,11,12,13\n", Schema::Wine);
    CHECK(wine.labels[0] == 2);
    CHECK(wine.row(0)[0] == 1.0);

    const auto iris = parse_csv("5.1,3.5,1.4,0.2,Iris-virginica\r\n\n\n", Schema::Iris);
    CHECK(iris.size() == 1);
    CHECK(iris.labels[0] == 2);
}

TEST_CASE("parse errors carry the line number")
{
    CHECK_THROWS_AS(parse_csv("", Schema::Iris), std::runtime_error);
    CHECK_THROWS_AS(parse_csv("\n\n", Schema::Iris), std::runtime_error);
    try {
        parse_csv("5.1,3.5,1.4,0.2,Iris-setosa\n5.1,3.5,1.4,Iris-setosa\n", Schema::Iris);
        FAIL("expected an error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    try {
        parse_csv("5.1,3.5,1.4,0.2,Iris-setosa\n\n5.1,x,1.4,0.2,Iris-setosa\n", Schema::Iris);
        FAIL("expected an error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_csv("5.1,3.5,1.4,0.2,Iris-unknown\n", Schema::Iris), std::runtime_error);
    CHECK_THROWS_AS(parse_csv("1,X,1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23,24,25,26,27,28,29,30\n",
                              Schema::Wdbc),
                    std::runtime_error);
    CHECK_THROWS_AS(load_csv(data_dir / "missing.data", Schema::Iris), std::runtime_error);
}

TEST_CASE("loading is idempotent")
{
    const Dataset a = load(Schema::Wine), b = load(Schema::Wine);
    CHECK(a.features == b.features);
    CHECK(a.labels == b.labels);
}

TEST_CASE("min-max scaling")
{
    Dataset ds;
    ds.n_features = 2;
    ds.class_count = 1;
    ds.features = {2, 5, 4, 5, 6, 5};
    ds.labels = {0, 0, 0};
    const Dataset n = normalize(ds);
    CHECK(n.features == std::vector<double>{0, 0, 0.5, 0, 1, 0});

    // Fitted on a subset; rows outside it may leave [0, 1].
    const std::vector<std::size_t> rows{0, 1};
    const MinMaxScaler s = MinMaxScaler::fit(ds, rows);
    const Dataset t = s.transform(ds);
    CHECK(t.features[4] == 2.0);

    const Dataset wine = normalize(load(Schema::Wine));
    for (std::size_t f = 0; f < wine.n_features; ++f) {
        double lo = 1e9, hi = -1e9;
        for (std::size_t i = 0; i < wine.size(); ++i) {
            lo = std::min(lo, wine.row(i)[f]);
            hi = std::max(hi, wine.row(i)[f]);
        }
        CHECK(lo == 0.0);
        CHECK(hi == 1.0);
    }
}

TEST_CASE("stratified folds on Iris are perfectly balanced")
{
    const Dataset iris = load(Schema::Iris);
    const FoldPlan plan = stratified_folds(iris, 10, 42);
    for (std::size_t f = 0; f < 10; ++f) {
        const auto test = plan.test_indices(f);
        CHECK(test.size() == 15);
        std::map<std::size_t, int> per_class;
        for (auto i : test)
            ++per_class[iris.labels[i]];
        for (std::size_t c = 0; c < 3; ++c)
            CHECK(per_class[c] == 5);
    }
    CHECK(stratified_folds(iris, 10, 42).assignment == plan.assignment);
    CHECK(stratified_folds(iris, 10, 43).assignment != plan.assignment);
}

TEST_CASE("fold partition and stratification on all three datasets")
{
    for (auto s : {Schema::Iris, Schema::Wdbc, Schema::Wine}) {
        const Dataset ds = load(s);
        for (std::uint64_t seed : {1u, 2u, 3u}) {
            const FoldPlan plan = stratified_folds(ds, 10, seed);
            check_partition(ds, plan);
            check_stratified(ds, plan);
        }
    }
}

TEST_CASE("classes smaller than k are rejected")
{
    const auto ds = parse_csv("5.1,3.5,1.4,0.2,Iris-setosa\n5.1,3.5,1.4,0.2,Iris-versicolor\n"
                              "5.1,3.5,1.4,0.2,Iris-virginica\n",
                              Schema::Iris);
    CHECK_THROWS_AS(stratified_folds(ds, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(stratified_folds(ds, 1, 1), std::invalid_argument);
}

TEST_CASE("subset keeps the requested rows in order")
{
    const Dataset iris = load(Schema::Iris);
    const std::vector<std::size_t> idx{149, 0, 75};
    const Dataset s = subset(iris, idx);
    CHECK(s.size() == 3);
    CHECK(s.labels == std::vector<std::size_t>{2, 0, 1});
    CHECK(s.row(1)[0] == iris.row(0)[0]);
}
