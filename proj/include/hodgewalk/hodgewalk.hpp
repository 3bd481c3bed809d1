#pragma once

#include "hodgewalk/errors.hpp"
#include "hodgewalk/rational.hpp"
#include "hodgewalk/sparse.hpp"
#include "hodgewalk/complex.hpp"
#include "hodgewalk/io.hpp"
#include "hodgewalk/boundary.hpp"
#include "hodgewalk/solvers.hpp"
#include "hodgewalk/laplacian.hpp"
#include "hodgewalk/spectral.hpp"
#include "hodgewalk/hodge.hpp"
#include "hodgewalk/embedding.hpp"
#include "hodgewalk/pagerank.hpp"
#include "hodgewalk/walk.hpp"
#include "hodgewalk/synthetic.hpp"
#include "hodgewalk/ingest.hpp"
