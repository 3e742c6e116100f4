#pragma once

#include "horoflow/grid.hpp"

namespace horoflow {

/// A graph hypersurface at one flow time: log-radius field over the
/// half-sphere, flow time, and contact angle (stored as its cosine, the
/// quantity every formula uses; theta = pi/2 is exactly cos_theta = 0).
struct FlowState {
    Field u;
    double t = 0.0;
    double cos_theta = 0.0;

    const GridSpec& grid() const { return u.grid; }
    int n() const { return u.grid.n; }
};

}  // namespace horoflow
