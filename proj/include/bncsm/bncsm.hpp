#pragma once

#include "bncsm/fock.hpp"
#include "bncsm/io.hpp"
#include "bncsm/operators.hpp"
#include "bncsm/params.hpp"
#include "bncsm/partition.hpp"
#include "bncsm/polynomial.hpp"
#include "bncsm/quadrature.hpp"
#include "bncsm/rational.hpp"
#include "bncsm/spectrum.hpp"
#include "bncsm/sympoly.hpp"
#include "bncsm/verify.hpp"
