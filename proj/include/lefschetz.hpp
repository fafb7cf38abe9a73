#pragma once

#include "lefschetz/rational.hpp"
#include "lefschetz/matrix.hpp"
#include "lefschetz/symgroup.hpp"
#include "lefschetz/multisegment.hpp"
#include "lefschetz/gl_params.hpp"
#include "lefschetz/hecke_algebra.hpp"
#include "lefschetz/hecke_module.hpp"
#include "lefschetz/module_analysis.hpp"
#include "lefschetz/transfer.hpp"
#include "lefschetz/parallel.hpp"
#include "lefschetz/selftest.hpp"
