#pragma once

#include "bounds.hpp"
#include "chains.hpp"
#include "coxeter.hpp"
#include "cyclotomic.hpp"
#include "hecke.hpp"
#include "matrix.hpp"
#include "partitions.hpp"
#include "sampler.hpp"
#include "scalar.hpp"
#include "spectral.hpp"
