#pragma once

#include "adhm/cli/driver.hpp"
#include "adhm/cli/sweep.hpp"
#include "adhm/exactla/elimination.hpp"
#include "adhm/exactla/embedding.hpp"
#include "adhm/exactla/field.hpp"
#include "adhm/exactla/matrix.hpp"
#include "adhm/exactla/subspace.hpp"
#include "adhm/io/json.hpp"
#include "adhm/monad/monad.hpp"
#include "adhm/monad/surface.hpp"
#include "adhm/plane/plane.hpp"
#include "adhm/quiver/blowup_rep.hpp"
#include "adhm/quiver/enumerate.hpp"
#include "adhm/quiver/hom.hpp"
#include "adhm/quiver/subrep.hpp"
#include "adhm/quiver/tangent.hpp"
#include "adhm/stability/conditions.hpp"
#include "adhm/stability/filtration.hpp"
#include "adhm/stability/kronecker.hpp"
#include "adhm/stability/param.hpp"
#include "adhm/stability/w0.hpp"
