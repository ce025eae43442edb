#include "nnaf/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nnaf/random.hpp"

namespace nnaf {

std::string_view to_string(Schema schema)
{
    switch (schema) {
    case Schema::Iris: return "iris";
    case Schema::Wdbc: return "wdbc";
    case Schema::Wine: return "wine";
    }
    return "?";
}

std::optional<Schema> parse_schema(std::string_view label)
{
    for (auto s : {Schema::Iris, Schema::Wdbc, Schema::Wine})
        if (to_string(s) == label)
            return s;
    return std::nullopt;
}

std::string_view file_name(Schema schema)
{
    switch (schema) {
    case Schema::Iris: return "iris.data";
    case Schema::Wdbc: return "wdbc.data";
    case Schema::Wine: return "wine.data";
    }
    return "?";
}

namespace {

struct SchemaInfo {
    std::size_t columns;
    std::size_t n_features;
    std::size_t class_count;
};

SchemaInfo info(Schema schema)
{
    switch (schema) {
    case Schema::Iris: return {5, 4, 3};
    case Schema::Wdbc: return {32, 30, 2};
    case Schema::Wine: return {14, 13, 3};
    }
    throw std::invalid_argument("unknown schema");
}

std::string_view trim(std::string_view s)
{
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& what)
{
    throw std::runtime_error("line " + std::to_string(line) + ": " + what);
}

double parse_number(std::string_view field, std::size_t line)
{
    field = trim(field);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(v))
        fail(line, "cannot parse number '" + std::string(field) + "'");
    return v;
}

std::size_t parse_label(Schema schema, std::string_view field, std::size_t line)
{
    field = trim(field);
    switch (schema) {
    case Schema::Iris:
        if (field == "Iris-setosa") return 0;
        if (field == "Iris-versicolor") return 1;
        if (field == "Iris-virginica") return 2;
        break;
    case Schema::Wdbc:
        if (field == "B") return 0;
        if (field == "M") return 1;
        break;
    case Schema::Wine:
        if (field == "1") return 0;
        if (field == "2") return 1;
        if (field == "3") return 2;
        break;
    }
    fail(line, "unknown label '" + std::string(field) + "'");
}

}  // namespace

Dataset parse_csv(std::string_view text, Schema schema, std::string name)
{
    const SchemaInfo si = info(schema);
    Dataset ds;
    ds.name = name.empty() ? std::string(to_string(schema)) : std::move(name);
    ds.n_features = si.n_features;
    ds.class_count = si.class_count;

    std::vector<std::string_view> fields;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        line = trim(line);
        if (line.empty())
            continue;

        fields.clear();
        for (std::size_t start = 0;;) {
            const auto comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
        if (fields.size() != si.columns)
            fail(line_no, "expected " + std::to_string(si.columns) + " columns for " +
                              std::string(to_string(schema)) + ", got " +
                              std::to_string(fields.size()));

        std::size_t label_col = 0, first_feature = 0;
        switch (schema) {
        case Schema::Iris: label_col = 4; first_feature = 0; break;
        case Schema::Wdbc: label_col = 1; first_feature = 2; break;
        case Schema::Wine: label_col = 0; first_feature = 1; break;
        }
        ds.labels.push_back(parse_label(schema, fields[label_col], line_no));
        for (std::size_t f = 0; f < si.n_features; ++f)
            ds.features.push_back(parse_number(fields[first_feature + f], line_no));
    }
    if (ds.labels.empty())
        throw std::runtime_error("dataset '" + ds.name + "' is empty");
    return ds;
}

Dataset load_csv(const std::filesystem::path& path, Schema schema)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_csv(buf.str(), schema);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

MinMaxScaler::MinMaxScaler(std::vector<double> mins, std::vector<double> maxs)
    : mins_(std::move(mins)), maxs_(std::move(maxs))
{
    if (mins_.size() != maxs_.size())
        throw std::invalid_argument("MinMaxScaler: min/max size mismatch");
}

MinMaxScaler MinMaxScaler::fit(const Dataset& ds, std::span<const std::size_t> rows)
{
    std::vector<std::size_t> all;
    if (rows.empty()) {
        all.resize(ds.size());
        for (std::size_t i = 0; i < all.size(); ++i)
            all[i] = i;
        rows = all;
    }
    if (rows.empty())
        throw std::invalid_argument("MinMaxScaler::fit: no rows");
    std::vector<double> lo(ds.n_features, INFINITY), hi(ds.n_features, -INFINITY);
    for (std::size_t r : rows) {
        const auto x = ds.row(r);
        for (std::size_t f = 0; f < ds.n_features; ++f) {
            lo[f] = std::min(lo[f], x[f]);
            hi[f] = std::max(hi[f], x[f]);
        }
    }
    return MinMaxScaler(std::move(lo), std::move(hi));
}

void MinMaxScaler::transform(std::span<double> row) const
{
    if (row.size() != mins_.size())
        throw std::invalid_argument("MinMaxScaler: feature count mismatch");
    for (std::size_t f = 0; f < row.size(); ++f) {
        const double span = maxs_[f] - mins_[f];
        row[f] = span > 0.0 ? (row[f] - mins_[f]) / span : 0.0;
    }
}

Dataset MinMaxScaler::transform(const Dataset& ds) const
{
    Dataset out = ds;
    for (std::size_t i = 0; i < out.size(); ++i)
        transform(std::span<double>(out.features.data() + i * out.n_features, out.n_features));
    return out;
}

Dataset normalize(const Dataset& ds)
{
    return MinMaxScaler::fit(ds).transform(ds);
}

std::vector<std::size_t> FoldPlan::test_indices(std::size_t fold) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignment.size(); ++i)
        if (assignment[i] == fold)
            out.push_back(i);
    return out;
}

std::vector<std::size_t> FoldPlan::train_indices(std::size_t fold) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignment.size(); ++i)
        if (assignment[i] != fold)
            out.push_back(i);
    return out;
}

FoldPlan stratified_folds(const Dataset& ds, std::size_t k, std::uint64_t seed)
{
    if (k < 2)
        throw std::invalid_argument("stratified_folds: k must be >= 2");
    std::vector<std::vector<std::size_t>> by_class(ds.class_count);
    for (std::size_t i = 0; i < ds.size(); ++i)
        by_class.at(ds.labels[i]).push_back(i);
    for (std::size_t c = 0; c < by_class.size(); ++c)
        if (by_class[c].size() < k)
            throw std::invalid_argument("stratified_folds: class " + std::to_string(c) + " has " +
                                        std::to_string(by_class[c].size()) +
                                        " samples, fewer than k = " + std::to_string(k));

    Rng rng(seed);
    FoldPlan plan;
    plan.k = k;
    plan.assignment.assign(ds.size(), 0);
    std::size_t next = 0;
    for (auto& members : by_class) {
        rng.shuffle(std::span<std::size_t>(members));
        for (std::size_t idx : members) {
            plan.assignment[idx] = next;
            next = (next + 1) % k;
        }
    }
    return plan;
}

Dataset subset(const Dataset& ds, std::span<const std::size_t> indices)
{
    Dataset out;
    out.name = ds.name;
    out.n_features = ds.n_features;
    out.class_count = ds.class_count;
    out.features.reserve(indices.size() * ds.n_features);
    out.labels.reserve(indices.size());
    for (std::size_t i : indices) {
        const auto r = ds.row(i);
        out.features.insert(out.features.end(), r.begin(), r.end());
        out.labels.push_back(ds.labels.at(i));
    }
    return out;
}

}  // namespace nnaf
