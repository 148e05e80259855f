#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sinc/types.hpp"

namespace sinc {

/// Type-erased characteristic function of the drift-adjusted log-return,
/// evaluated at a complex frequency in cycles (kappa). A copy shares the
/// warning counter with the original.
class CharacteristicFunction {
 public:
  using PointFn = std::function<cplx(cplx)>;
  using BatchFn = std::function<void(std::span<const cplx>, std::span<cplx>)>;
  using WarningCounter = std::shared_ptr<std::atomic<std::size_t>>;

  CharacteristicFunction() = default;
  explicit CharacteristicFunction(PointFn point, std::string name = "cf");
  CharacteristicFunction(PointFn point, BatchFn batch, std::string name,
                         WarningCounter warnings = nullptr);

  cplx operator()(cplx kappa) const { return point_(kappa); }

  /// Evaluates all frequencies; models with a dedicated batch path (rough
  /// Heston) use it, the rest are mapped in parallel.
  void evaluate(std::span<const cplx> kappas, std::span<cplx> out) const;
  std::vector<cplx> evaluate(std::span<const cplx> kappas) const;

  const std::string& name() const { return name_; }
  explicit operator bool() const { return static_cast<bool>(point_); }

  /// Count of flagged evaluations (e.g. an overflow guard returning 0).
  std::size_t warnings() const { return warnings_ ? warnings_->load() : 0; }
  void flag_warning() const {
    if (warnings_) warnings_->fetch_add(1, std::memory_order_relaxed);
  }
  WarningCounter warning_counter() const { return warnings_; }

 private:
  PointFn point_;
  BatchFn batch_;
  WarningCounter warnings_;
  std::string name_;
};

}  // namespace sinc
