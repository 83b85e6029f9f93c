#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ampc {

/*
 * Base class of every error raised by the library. `kind()` is a stable
 * machine-readable name used in CLI reports.
 */
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

// A machine passed quota_slack * S queries or writes within one round.
class QuotaExceeded : public Error {
 public:
  QuotaExceeded(uint32_t machine_id, const std::string& what)
      : Error("QuotaExceeded", what), machine_id_(machine_id) {}

  uint32_t machine_id() const { return machine_id_; }

 private:
  uint32_t machine_id_;
};

#define AMPC_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  };

AMPC_DEFINE_ERROR(InvalidSize)
AMPC_DEFINE_ERROR(ParseError)
AMPC_DEFINE_ERROR(NotAForest)
AMPC_DEFINE_ERROR(CycleDetected)
AMPC_DEFINE_ERROR(DifferentComponents)
AMPC_DEFINE_ERROR(NotAncestor)
AMPC_DEFINE_ERROR(OutOfRange)
AMPC_DEFINE_ERROR(NotACycleGraph)
AMPC_DEFINE_ERROR(ComponentTooLarge)
AMPC_DEFINE_ERROR(IterationBudgetExceeded)
AMPC_DEFINE_ERROR(ConfigError)
AMPC_DEFINE_ERROR(InputMismatch)
AMPC_DEFINE_ERROR(IoError)
AMPC_DEFINE_ERROR(StoreFrozen)
AMPC_DEFINE_ERROR(OversizedPair)

#undef AMPC_DEFINE_ERROR

}  // namespace ampc
