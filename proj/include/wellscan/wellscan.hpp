#ifndef WELLSCAN_WELLSCAN_HPP
#define WELLSCAN_WELLSCAN_HPP

#include "wellscan/analytics.hpp"
#include "wellscan/cluster_gen.hpp"
#include "wellscan/hyp_u.hpp"
#include "wellscan/ladder.hpp"
#include "wellscan/lattice_path.hpp"
#include "wellscan/one_sided.hpp"
#include "wellscan/parallel.hpp"
#include "wellscan/point_sample.hpp"
#include "wellscan/quadrature.hpp"
#include "wellscan/sampling.hpp"
#include "wellscan/stats.hpp"
#include "wellscan/validation.hpp"
#include "wellscan/version.hpp"
#include "wellscan/well_scan.hpp"

#endif  // WELLSCAN_WELLSCAN_HPP
