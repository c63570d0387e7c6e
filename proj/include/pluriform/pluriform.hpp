#pragma once

#include "pluriform/diff/derivatives.hpp"
#include "pluriform/diff/dual.hpp"
#include "pluriform/errors.hpp"
#include "pluriform/hamiltonian.hpp"
#include "pluriform/mechsys/lagrangian.hpp"
#include "pluriform/mechsys/sampler.hpp"
#include "pluriform/mechsys/systems.hpp"
#include "pluriform/mechsys/types.hpp"
#include "pluriform/multitime.hpp"
#include "pluriform/noether.hpp"
#include "pluriform/symalg.hpp"
