#pragma once

// Schur multiple zeta values on connected skew Young diagrams with
// diagonal-constant indices: truncated series evaluation, Yamamoto
// 2-labeled-poset integral representations, and the duality relations
// induced by the involutions of labeled words.

#include "schurz/config.hpp"
#include "schurz/diagram.hpp"
#include "schurz/duality.hpp"
#include "schurz/errors.hpp"
#include "schurz/eval_result.hpp"
#include "schurz/integral.hpp"
#include "schurz/io_json.hpp"
#include "schurz/notation.hpp"
#include "schurz/poset.hpp"
#include "schurz/quadrature.hpp"
#include "schurz/rational.hpp"
#include "schurz/series.hpp"
