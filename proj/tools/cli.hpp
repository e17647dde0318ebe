#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "slet/engine.hpp"
#include "slet/error.hpp"
#include "slet/fixtures.hpp"
#include "slet/oracle.hpp"

namespace slet::cli {

enum class Method { slet, oracle, both, closed_form };
enum class Format { csv, json, text };

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int invalid_input = 2;
inline constexpr int convergence = 3;
inline constexpr int unphysical = 4;
inline constexpr int divergence = 5;
}  // namespace exit_code

int exit_code_for(ErrorKind kind) noexcept;

const char* to_string(Method m) noexcept;

struct RunManifest {
    std::string command = "solve";
    std::string potential;
    double m1 = 0.0;
    double m2 = 0.0;
    std::vector<QuantumNumbers> states;
    Method method = Method::slet;
    Format format = Format::text;
    std::string out;
    bool nonrelativistic = false;
    bool breakdown = false;
    int table = 0;
    int jobs = 0;  ///< worker threads, 0 picks hardware_concurrency
    SolverSettings slet;
    OracleSettings oracle;

    /// Throws invalid_input on an unusable manifest.
    void validate() const;
    ParticlePair pair() const { return {m1, m2, nonrelativistic}; }
};

/// One solve by one method. `status` is "ok" or the error kind.
struct Record {
    QuantumNumbers qn;
    Method method = Method::slet;
    std::optional<SletSolution> slet;
    std::optional<OracleSolution> oracle;
    std::optional<CoulombClosedForm> closed_form;
    std::optional<double> binding_energy;
    std::optional<double> mass;
    std::string status = "ok";
    std::optional<ErrorKind> error;
    std::string message;
};

/// Solves every requested state with every requested method. Output order
/// follows manifest.states, whatever order the workers finish in.
std::vector<Record> run_states(const RunManifest& manifest);

/// Inclusive range "a:b" or a single integer.
std::vector<int> parse_range(const std::string& text);

/// Help requests and command-line syntax errors, already rendered.
struct UsageExit {
    int code;  ///< 0 for help, otherwise CLI11's parse error code
    std::string text;
};

/// Parses argv into a manifest. Throws UsageExit for help and syntax errors.
RunManifest parse_arguments(int argc, const char* const* argv);

/// Full command execution. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace slet::cli
