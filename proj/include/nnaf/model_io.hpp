#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "nnaf/data.hpp"
#include "nnaf/network.hpp"

namespace nnaf {

/// A trained network plus the input scaling it was trained under.
struct Model {
    Network network;
    std::optional<MinMaxScaler> scaler;
};

/// Line-oriented text format, version 1:
///
///   nnaf-model 1
///   topology <inputs> <hidden> <outputs>
///   transfer <sigfix|sigadp|tanhfix|tanhadp|gaussian|beta>
///   hidden_weights        then <hidden> lines of <inputs> numbers
///   hidden_biases         then one line of <hidden> numbers
///   output_weights        then <outputs> lines of <hidden> numbers
///   output_biases         then one line of <outputs> numbers
///   hidden_tf             then <hidden> lines of per-node parameters
///   output_tf             then <outputs> lines of per-node parameters
///   scaler <features>     optional; followed by "min ..." and "max ..." lines
///   end
///
/// Parameter lines are empty for fixed families. Numbers are written in
/// shortest round-trip form, so save/load is exact.
void write_model(std::ostream& out, const Model& model);
Model read_model(std::istream& in);

void save_model(const std::filesystem::path& path, const Model& model);
Model load_model(const std::filesystem::path& path);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace nnaf
