// Error taxonomy shared by every module. All domain failures derive from
// weave::Error; callers that need the payload catch the concrete type.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace weave {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A stated precondition of an operation does not hold for the given inputs.
struct PreconditionViolated : Error {
    using Error::Error;
};

// An exact enumeration would exceed its configured budget.
struct BudgetExceeded : Error {
    BudgetExceeded(const std::string& what, std::uint64_t required, std::uint64_t cap)
        : Error(what + " (required ~" + std::to_string(required) + ", cap " + std::to_string(cap) + ")"),
          required(required), cap(cap) {}
    std::uint64_t required = 0;
    std::uint64_t cap = 0;
};

// Exact verification was requested on an instance above the exact-mode size limit.
struct SizeLimitExceeded : Error {
    using Error::Error;
};

// Parameters describe an object that cannot exist.
struct InfeasibleParams : Error {
    using Error::Error;
};

// A retrying randomized construction hit its retry cap.
struct RetryExhausted : Error {
    using Error::Error;
};

// A randomized bipartition failed its degree check too often.
struct PartitionRejected : Error {
    using Error::Error;
};

// Tuple selection exhausted its candidates; carries the best attempt.
struct SelectionFailed : Error {
    SelectionFailed(const std::string& what, int round, std::vector<std::string> failing)
        : Error(what), round(round), failing_properties(std::move(failing)) {}
    int round = 0;
    std::vector<std::string> failing_properties;
};

// A single placement step found an empty candidate pool.
struct ExtensionStuck : Error {
    ExtensionStuck(const std::string& what, int label, std::vector<int> back_images)
        : Error(what), label(label), back_images(std::move(back_images)) {}
    int label = 0;                  // the label that could not be placed
    std::vector<int> back_images;   // images of its already-embedded neighbors
};

// An embedding pipeline failed; carries the block index and the underlying cause.
struct PipelineFailed : Error {
    PipelineFailed(const std::string& what, int block, std::string cause)
        : Error(what), block(block), cause(std::move(cause)) {}
    int block = 0;
    std::string cause;
};

// No backbone structure was found in the reduced graph.
struct BackboneNotFound : Error {
    using Error::Error;
};

// Interval balancing ran out of permutation samples; carries the best attempt.
struct BalancingFailed : Error {
    BalancingFailed(const std::string& what, double worst_ratio)
        : Error(what), worst_ratio(worst_ratio) {}
    double worst_ratio = 0;  // worst per-class crowding found in the best tuple
};

// A "cannot happen" branch was reached; indicates a bug or a hostile test hook.
struct InternalInvariantBroken : Error {
    using Error::Error;
};

// Malformed input file / JSON.
struct ParseError : Error {
    using Error::Error;
};

// Process exit codes for the CLI.
enum ExitCode : int {
    exit_ok = 0,
    exit_check_failed = 2,   // a verification produced REFUTED / failed
    exit_bad_input = 3,      // precondition or parse failure
    exit_internal = 4,       // internal invariant / budget / unexpected
};

}  // namespace weave
