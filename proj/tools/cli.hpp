#pragma once

#include <iosfwd>
#include <string>

namespace ssmdrift::cli
{

enum ExitCode : int
{
    kOk = 0,
    kFailure = 1,
    kInputError = 2,
    kFitError = 3,
    kUnreachable = 4,
    kLivelock = 5,
};

/// Settings shared by every subcommand. Flags and `--config` keys map onto
/// these fields one to one.
struct RunConfig
{
    std::string out_dir{"."};

    std::string grid;
    std::string model;
    std::string model2;
    std::string inner;

    int N{4};
    int L{5};
    bool sweep{false};
    int sweep_n_max{8};

    double fp_tol{1e-5};
    double error_tol{1e-9};
    double local_tol{1e-14};

    double I{1.0};
    double phi{0.0};
    bool transition{false};

    int orbits{100};
    int iters{1000};
    double phi0{0.0};

    double start_I{1.0};
    double start_phi{1.5};
    double target_I{7.0};
    double target_phi{1.5};
    double radius{0.25};
    int cells_m{30};
    int cells_n{30};
    int max_steps{500};
    double t_out{6.000688};
    std::string maps{"F,T1,T2"};
    bool write_graph{false};

    std::string kind{"reference"};
    unsigned long long seed{2024};
    int channel{1};
    std::string tori{"1,2,3,4,5,6,7"};
    int samples{128};

    double mu{3.040423398444176e-6};

    /// Throws RangeError on non-positive tolerances or sizes.
    void validate() const;
};

/// Parse argv and run one subcommand. Returns an ExitCode.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace ssmdrift::cli
