#pragma once

#include "gpchow/cache.hpp"
#include "gpchow/chow.hpp"
#include "gpchow/cmprod.hpp"
#include "gpchow/coeff.hpp"
#include "gpchow/error.hpp"
#include "gpchow/expr.hpp"
#include "gpchow/frame.hpp"
#include "gpchow/gkm.hpp"
#include "gpchow/linalg.hpp"
#include "gpchow/motcheck.hpp"
#include "gpchow/parallel.hpp"
#include "gpchow/poly.hpp"
#include "gpchow/rootsys.hpp"
#include "gpchow/series.hpp"
#include "gpchow/verify.hpp"
#include "gpchow/weyl.hpp"
