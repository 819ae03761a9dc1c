#include "klein/fock.hpp"

namespace klein {

FockVector fock_product_state(int cutoff, Complex q1_up, Complex q1_down,
                              Complex q2_up, Complex q2_down) {
    FockVector v;
    v.cutoff = cutoff;
    v.amp = Eigen::VectorXcd::Zero(4 * cutoff);
    const Complex q1[2] = {q1_up, q1_down};
    const Complex q2[2] = {q2_up, q2_down};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) v.at(a, b, 0) = q1[a] * q2[b];
    v.amp /= v.amp.norm();
    return v;
}

FockVector fock_ground_state(int cutoff) {
    const double s = 1.0 / std::sqrt(2.0);
    return fock_product_state(cutoff, s, s, s, s);
}

}  // namespace klein
