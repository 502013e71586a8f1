#pragma once

#include "qfb/expr.hpp"
#include "qfb/homogeneous.hpp"
#include "qfb/linebundle.hpp"
#include "qfb/omega.hpp"

namespace qfb {

class LoadError : public std::runtime_error {
public:
    explicit LoadError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ChecksConfig {
    uint64_t seed = 1;
    int samples = 100;
    size_t word_length = 3;
    size_t maximality_bound = 0;   // 0: probe skipped
    size_t regularity_bound = 3;
    size_t regularity_expected_dim = 0;
    size_t confluence_length = 6;
    size_t series_bound = 4;
    size_t coordinate_slice = 3;
};

/// A fully loaded bundle definition: the group, the bimodule, the bundle,
/// the frame, named connections, the induced calculus and optional
/// homogeneous or line-bundle data.
struct Instance {
    std::string name;
    std::shared_ptr<const ParamTable> tab;
    std::map<std::string, Rat> values;

    std::unique_ptr<Hopf> G;
    std::unique_ptr<Hopf> Hbig;  // homogeneous instances only
    std::unique_ptr<Bimodule> V_own;
    std::unique_ptr<Bundle> P_own;
    std::unique_ptr<Homogeneous> homog;

    std::optional<Mat> reference_tau;
    std::shared_ptr<CoordinateFields> fields;
    HorMap nabla;  // empty target when no frame is declared
    std::shared_ptr<ReductionData> red;
    std::optional<CoordinateSpan> coord;
    // alpha-major dual family rows (q over basis columns, p over basis columns)
    std::vector<std::pair<std::vector<NcPoly>, std::vector<NcPoly>>> dual_pairs;
    std::map<std::string, std::shared_ptr<KerEpsMap>> connections;
    std::shared_ptr<Fodc> fodc;
    std::unique_ptr<Calculus> calc;
    std::optional<LineBundleData> lb;
    std::vector<std::pair<NcPoly, NcPoly>> ideal_lifts;
    ChecksConfig checks;

    const Bimodule& bim() const { return homog ? homog->bim : *V_own; }
    const Bundle& bundle() const { return homog ? homog->bundle : *P_own; }
    bool has_frame() const { return static_cast<bool>(nabla); }
};

/// Loads and structurally validates a definition file. Algebraic
/// consistency is checked by the verification suites, not here; this throws
/// only for malformed data, unknown symbols, or excluded parameter values.
std::unique_ptr<Instance> load_instance(const std::string& path);
std::unique_ptr<Instance> load_instance_text(const std::string& json_text,
                                             const std::string& name_hint = "");

/// Directory holding the shipped definition files.
std::string instance_dir();

}  // namespace qfb
