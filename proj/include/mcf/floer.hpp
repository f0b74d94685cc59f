#pragma once

#include <map>
#include <optional>
#include <vector>

#include "json.hpp"
#include "mcf/gf2.hpp"
#include "mcf/lagrangian.hpp"
#include "mcf/lefschetz.hpp"
#include "mcf/moduli.hpp"
#include "mcf/variety.hpp"

namespace mcf::floer {

using variety::SurfaceParams;

// Generators of the pearly complex: two Morse critical points of the height
// function on the sphere plus the two ordered branch pairs at the node.
enum class GeneratorKind { PMin, PMax, PQ, QP };

struct Generator {
    GeneratorKind kind = GeneratorKind::PMin;
    int degree = 0;
};

int degree_of(GeneratorKind kind);
Generator generator(GeneratorKind kind);
std::vector<Generator> generators();

// deg(x_minus) - deg(x_plus) - 1.
int moduli_dimension(const Generator& x_minus, const Generator& x_plus);

// Height model with two critical points, anchored away from the node and
// with distinct fibration images.
struct MorseData {
    lagrangian::ChartPoint p_min;
    lagrangian::ChartPoint p_max;
};
MorseData default_morse_data();

// Input cycle: standard sphere of radius r, or a validated matching loop.
struct CycleInput {
    SurfaceParams params;
    int r = 0;
    std::optional<lefschetz::MatchingLoop> loop;
    nlohmann::json echo;

    bool standard() const { return !loop.has_value(); }
};
CycleInput standard_input(int N, int r);
CycleInput loop_input(int N, lefschetz::MatchingLoop loop);

// Counting strategy: closed-form component enumeration, or a root solve of
// the end-evaluation map in every component.
enum class CountMode { Enumerate, Solve };

int enclosed_count(const CycleInput& input);

// Zero-dimensional connecting count before mod-2 reduction. Throws unless
// moduli_dimension(x_minus, x_plus) = 0.
int connecting_count(const CycleInput& input, const Generator& x_minus,
                     const Generator& x_plus, CountMode mode = CountMode::Enumerate);

gf2::GradedComplex build_complex(const CycleInput& input,
                                 CountMode mode = CountMode::Enumerate);

std::map<int, int> cohomology(const gf2::GradedComplex& cx);

// Full pipeline: validation, enclosure, counts, complex, cohomology, and the
// residual/positivity verification block, as one JSON report.
nlohmann::json floer_cohomology(const CycleInput& input, int grid = 64,
                                double tol_solve = 1e-10);

} // namespace mcf::floer
