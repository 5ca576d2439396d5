#pragma once

#include "cvspin/bell.hpp"
#include "cvspin/expm.hpp"
#include "cvspin/fock.hpp"
#include "cvspin/parity.hpp"
#include "cvspin/pseudospin.hpp"
#include "cvspin/squeeze.hpp"
#include "cvspin/sweep.hpp"
#include "cvspin/verify.hpp"
