#pragma once

// Umbrella header: the whole library.

#include "dhstab/cholesky.hpp"
#include "dhstab/cli.hpp"
#include "dhstab/conicqp.hpp"
#include "dhstab/dh.hpp"
#include "dhstab/eig.hpp"
#include "dhstab/errors.hpp"
#include "dhstab/kvdoc.hpp"
#include "dhstab/matrix.hpp"
#include "dhstab/mmio.hpp"
#include "dhstab/nearstab.hpp"
#include "dhstab/project.hpp"
#include "dhstab/region.hpp"
#include "dhstab/regionspec.hpp"
#include "dhstab/report.hpp"
#include "dhstab/rng.hpp"
#include "dhstab/svgplot.hpp"
#include "dhstab/textio.hpp"
