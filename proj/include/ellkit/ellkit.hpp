#pragma once

#include "ellkit/errors.hpp"
#include "ellkit/rational.hpp"
#include "ellkit/lattice_core.hpp"
#include "ellkit/affine_weyl.hpp"
#include "ellkit/char_ring.hpp"
#include "ellkit/theta.hpp"
#include "ellkit/modular.hpp"
#include "ellkit/gkm.hpp"
#include "ellkit/stalk.hpp"
#include "ellkit/serialize.hpp"
