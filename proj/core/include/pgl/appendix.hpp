#pragma once

#include "pgl/factorizer.hpp"
#include "pgl/sums.hpp"
#include "pgl/tuples.hpp"
#include "pgl/weights.hpp"

#include <string>
#include <vector>

namespace pgl {

// Full identity suite for the k=2 pipeline: the change-of-variables chain is
// algebra, so every "exact" line must hold as a rational equality; the two
// truncation lines are measurements against rigorous computable bounds.
struct AppendixReport {
    struct Identity {
        std::string name;
        bool exact = true; // false for measured-defect lines
        bool pass = false;
        std::string lhs;
        std::string rhs;
    };
    struct Defect {
        std::string name;
        double defect = 0.0;
        double bound = 0.0;          // rigorous computable bound (defect <= bound)
        double shape = 0.0;          // eta_max (log D)/Y -shaped reference scale
        double measured_constant = 0.0; // defect / shape
    };

    std::int64_t D = 0;
    double Y = 0.0;
    std::int64_t Z = 1;
    std::int64_t c0 = 0;
    std::vector<Identity> identities;
    std::vector<Defect> defects;

    bool all_exact_pass() const
    {
        for (const auto& id : identities)
            if (id.exact && !id.pass)
                return false;
        return true;
    }
};

// Runs the suite for the given tuple/D/Y with F = 1 - xi_1 - xi_2 by
// default (any simplex polynomial works; the chain is an identity in eta).
AppendixReport verify_appendix(const Tuple& tuple, std::int64_t D, double Y,
                               const Factorizer& fac,
                               const SimplexPolynomial* F = nullptr);

std::string render_text(const AppendixReport& rep);

} // namespace pgl
