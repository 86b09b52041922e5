#include "synthbench/nn/checkpoint.hpp"

#include <bit>
#include <cstring>

#include "synthbench/util/error.hpp"
#include "synthbench/util/io.hpp"

namespace synthbench::nn {
namespace fs = std::filesystem;

namespace {

fs::path with_suffix(fs::path stem, const char* suffix) {
  stem += suffix;
  return stem;
}

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    std::uint64_t out = 0;
    for (int b = 0; b < 8; ++b) out |= ((v >> (8 * b)) & 0xFF) << (8 * (7 - b));
    return out;
  }
}

}  // namespace

void save_checkpoint(const fs::path& stem, const Mlp& net, const nlohmann::json& extra) {
  const Vector p = net.parameters();
  std::string bytes(static_cast<std::size_t>(p.size()) * 8, '\0');
  for (Index i = 0; i < p.size(); ++i) {
    const auto bits = to_little(std::bit_cast<std::uint64_t>(p[i]));
    std::memcpy(bytes.data() + 8 * i, &bits, 8);
  }
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : net.layers())
    layers.push_back({{"in", l.weight.rows()}, {"out", l.weight.cols()}, {"activation", to_string(l.activation)}});
  nlohmann::json manifest = {{"format", "float64-le"},
                             {"layout", "per layer: weight (in x out, column-major), then bias"},
                             {"parameter_count", p.size()},
                             {"seed", net.seed()},
                             {"layers", std::move(layers)}};
  if (!extra.is_null()) manifest["extra"] = extra;
  write_file_atomic(with_suffix(stem, ".bin"), bytes);
  write_file_atomic(with_suffix(stem, ".json"), manifest.dump(2) + "\n");
}

Mlp load_checkpoint(const fs::path& stem) {
  const auto manifest = nlohmann::json::parse(read_file(with_suffix(stem, ".json")));
  MlpSpec spec;
  spec.seed = manifest.value("seed", std::uint64_t{0});
  for (const auto& l : manifest.at("layers")) {
    if (spec.widths.empty()) spec.widths.push_back(l.at("in").get<Index>());
    spec.widths.push_back(l.at("out").get<Index>());
    spec.activations.push_back(parse_activation(l.at("activation").get<std::string>()));
  }
  Mlp net(spec);
  const std::string bytes = read_file(with_suffix(stem, ".bin"));
  const auto expected = manifest.at("parameter_count").get<Index>();
  if (expected != net.parameter_count() || static_cast<Index>(bytes.size()) != 8 * expected)
    throw DataError("checkpoint " + stem.string() + ": binary holds " + std::to_string(bytes.size() / 8) +
                    " values, manifest expects " + std::to_string(expected));
  Vector p(expected);
  for (Index i = 0; i < expected; ++i) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, bytes.data() + 8 * i, 8);
    p[i] = std::bit_cast<double>(to_little(bits));
  }
  net.set_parameters(p);
  return net;
}

}  // namespace synthbench::nn
