#ifndef DICKE_DICKE_HPP
#define DICKE_DICKE_HPP

#include "dicke/errors.hpp"
#include "dicke/io.hpp"
#include "dicke/observables.hpp"
#include "dicke/propagator.hpp"
#include "dicke/raman.hpp"
#include "dicke/scaling.hpp"
#include "dicke/spinops.hpp"
#include "dicke/state.hpp"
#include "dicke/tridiagonal.hpp"

#endif // DICKE_DICKE_HPP
