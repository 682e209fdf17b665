#ifndef PERC_ERRORS_HPP
#define PERC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace perc {

enum class Errc {
    BadInput,           // malformed file / argument
    UnknownVertex,      // vertex id out of range
    CapExceeded,        // instance larger than a solver's size cap
    WorkCapExceeded,    // estimated search work above budget
    NotPercolating,     // percolation time asked for a non-percolating seed set
    WrongDegreeClass,   // solver requires a specific maximum degree
    NotSolidGridDelta3, // solid-grid solver preconditions violated
    NoSpeedup,          // lemma-1 witness asked without a strict time drop
    Disconnected,       // solver requires a connected graph
    InvalidDecomposition,
    InvalidCase,        // impossible ladder case / parameter
    PlacementConflict,  // reduction could not place a vertex
};

class PercError : public std::runtime_error {
public:
    PercError(Errc code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) {
    throw PercError(code, msg);
}

} // namespace perc

#endif
