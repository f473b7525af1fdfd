#include "gbv/config.hpp"

namespace gbv {

std::string list_families() {
    return
        "built-in metric families\n"
        "\n"
        "football: chi = 2 + 2*beta; constant curvature K = 1; total curvature = 2*pi*(2 + 2*beta)\n"
        "  surface sphere; params: beta > -1; divisor: cone(beta) at z = 0 and at w = 0\n"
        "round_sphere: chi = 2; K = 1; total curvature = 4*pi\n"
        "  surface sphere; no params; empty divisor (equals football with beta = 0)\n"
        "flat_torus: chi = 0; K = 0; total curvature = 0\n"
        "  surface torus (modulus tau, Im tau > 0); no params; empty divisor\n"
        "flat_cone: local patch, no global chi; K = 0; v = beta*log|z|\n"
        "  surface disk (radius R); params: beta > -1; divisor: cone(beta) at z = 0\n"
        "cusp_model: local patch, no global chi; K = -1; v = -log|z| - log(-log|z|)\n"
        "  surface disk (radius R in (0,1)); no params; divisor: cusp at z = 0\n";
}

} // namespace gbv
