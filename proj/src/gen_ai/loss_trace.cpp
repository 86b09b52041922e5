#include "synthbench/gen_ai/loss_trace.hpp"

#include "synthbench/util/io.hpp"

namespace synthbench {

std::string LossTrace::to_csv() const {
  std::string out = "epoch";
  for (const auto& c : columns) out += "," + c;
  out += "\n";
  for (std::size_t e = 0; e < rows.size(); ++e) {
    out += std::to_string(e + 1);
    for (double v : rows[e]) out += "," + format_number(v);
    out += "\n";
  }
  return out;
}

}  // namespace synthbench
