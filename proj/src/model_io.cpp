#include "nnaf/model_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace nnaf {

std::string format_double(double v)
{
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{})
        throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

namespace {

void write_row(std::ostream& out, std::span<const double> values)
{
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out << ' ';
        out << format_double(values[i]);
    }
    out << '\n';
}

void write_matrix(std::ostream& out, const std::vector<double>& m, std::size_t rows, std::size_t cols)
{
    for (std::size_t r = 0; r < rows; ++r)
        write_row(out, std::span<const double>(m.data() + r * cols, cols));
}

class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    std::string line()
    {
        std::string s;
        if (!std::getline(in_, s))
            throw std::runtime_error("model file truncated after line " + std::to_string(line_no_));
        ++line_no_;
        if (!s.empty() && s.back() == '\r')
            s.pop_back();
        return s;
    }

    void expect(const std::string& keyword)
    {
        const auto s = line();
        if (s != keyword)
            fail("expected '" + keyword + "', found '" + s + "'");
    }

    std::vector<double> numbers(std::size_t n, std::string_view prefix = {})
    {
        std::string s = line();
        std::string_view view = s;
        if (!prefix.empty()) {
            if (view.substr(0, prefix.size()) != prefix)
                fail("expected '" + std::string(prefix) + "'");
            view.remove_prefix(prefix.size());
        }
        std::vector<double> out;
        while (true) {
            while (!view.empty() && view.front() == ' ')
                view.remove_prefix(1);
            if (view.empty())
                break;
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(view.data(), view.data() + view.size(), v);
            if (ec != std::errc{})
                fail("bad number");
            view.remove_prefix(static_cast<std::size_t>(ptr - view.data()));
            out.push_back(v);
        }
        if (out.size() != n)
            fail("expected " + std::to_string(n) + " numbers, found " + std::to_string(out.size()));
        return out;
    }

    std::vector<double> matrix(std::size_t rows, std::size_t cols)
    {
        std::vector<double> m;
        m.reserve(rows * cols);
        for (std::size_t r = 0; r < rows; ++r) {
            const auto row = numbers(cols);
            m.insert(m.end(), row.begin(), row.end());
        }
        return m;
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw std::runtime_error("model line " + std::to_string(line_no_) + ": " + what);
    }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

}  // namespace

void write_model(std::ostream& out, const Model& model)
{
    const Network& net = model.network;
    net.validate();
    const auto& t = net.topology;
    out << "nnaf-model 1\n";
    out << "topology " << t.inputs << ' ' << t.hidden << ' ' << t.outputs << '\n';
    out << "transfer " << to_string(net.kind()) << '\n';
    out << "hidden_weights\n";
    write_matrix(out, net.hidden_weights, t.hidden, t.inputs);
    out << "hidden_biases\n";
    write_row(out, net.hidden_biases);
    out << "output_weights\n";
    write_matrix(out, net.output_weights, t.outputs, t.hidden);
    out << "output_biases\n";
    write_row(out, net.output_biases);
    out << "hidden_tf\n";
    for (const auto& tf : net.hidden_tf)
        write_row(out, tf.params());
    out << "output_tf\n";
    for (const auto& tf : net.output_tf)
        write_row(out, tf.params());
    if (model.scaler) {
        out << "scaler " << model.scaler->mins().size() << '\n';
        out << "min ";
        write_row(out, model.scaler->mins());
        out << "max ";
        write_row(out, model.scaler->maxs());
    }
    out << "end\n";
}

Model read_model(std::istream& in)
{
    Reader r(in);
    r.expect("nnaf-model 1");

    Model model;
    Network& net = model.network;
    {
        std::istringstream ss(r.line());
        std::string kw;
        auto& t = net.topology;
        if (!(ss >> kw >> t.inputs >> t.hidden >> t.outputs) || kw != "topology")
            r.fail("expected 'topology <inputs> <hidden> <outputs>'");
        t.validate();
    }
    TransferKind kind{};
    {
        const auto s = r.line();
        const auto parsed = s.rfind("transfer ", 0) == 0 ? parse_transfer_kind(s.substr(9)) : std::nullopt;
        if (!parsed)
            r.fail("expected 'transfer <family>'");
        kind = *parsed;
    }
    const auto& t = net.topology;
    const std::size_t per_node = param_count(kind);
    r.expect("hidden_weights");
    net.hidden_weights = r.matrix(t.hidden, t.inputs);
    r.expect("hidden_biases");
    net.hidden_biases = r.numbers(t.hidden);
    r.expect("output_weights");
    net.output_weights = r.matrix(t.outputs, t.hidden);
    r.expect("output_biases");
    net.output_biases = r.numbers(t.outputs);
    r.expect("hidden_tf");
    for (std::size_t j = 0; j < t.hidden; ++j)
        net.hidden_tf.emplace_back(kind, r.numbers(per_node));
    r.expect("output_tf");
    for (std::size_t k = 0; k < t.outputs; ++k)
        net.output_tf.emplace_back(kind, r.numbers(per_node));

    auto s = r.line();
    if (s.rfind("scaler ", 0) == 0) {
        const std::size_t n = std::stoul(s.substr(7));
        auto mins = r.numbers(n, "min ");
        auto maxs = r.numbers(n, "max ");
        model.scaler = MinMaxScaler(std::move(mins), std::move(maxs));
        s = r.line();
    }
    if (s != "end")
        r.fail("expected 'end'");
    net.validate();
    return model;
}

void save_model(const std::filesystem::path& path, const Model& model)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    write_model(out, model);
}

Model load_model(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    return read_model(in);
}

}  // namespace nnaf
