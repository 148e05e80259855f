#include "sinc/characteristic_function.hpp"

#include <utility>

#include "sinc/parallel.hpp"

namespace sinc {

CharacteristicFunction::CharacteristicFunction(PointFn point, std::string name)
    : CharacteristicFunction(std::move(point), nullptr, std::move(name)) {}

CharacteristicFunction::CharacteristicFunction(PointFn point, BatchFn batch, std::string name,
                                               WarningCounter warnings)
    : point_(std::move(point)),
      batch_(std::move(batch)),
      warnings_(warnings ? std::move(warnings) : std::make_shared<std::atomic<std::size_t>>(0)),
      name_(std::move(name)) {}

void CharacteristicFunction::evaluate(std::span<const cplx> kappas, std::span<cplx> out) const {
  if (out.size() != kappas.size()) throw DomainError("cf: output span size mismatch");
  if (batch_) {
    batch_(kappas, out);
    return;
  }
  parallel_for(
      kappas.size(),
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) out[i] = point_(kappas[i]);
      },
      256);
}

std::vector<cplx> CharacteristicFunction::evaluate(std::span<const cplx> kappas) const {
  std::vector<cplx> out(kappas.size());
  evaluate(kappas, out);
  return out;
}

}  // namespace sinc
