#pragma once

#include "rct/axioms.hpp"
#include "rct/canonical.hpp"
#include "rct/causes.hpp"
#include "rct/enumerate.hpp"
#include "rct/eval.hpp"
#include "rct/formula.hpp"
#include "rct/intervention.hpp"
#include "rct/model.hpp"
#include "rct/model_io.hpp"
#include "rct/normal_form.hpp"
#include "rct/parser.hpp"
#include "rct/proof.hpp"
#include "rct/random_formula.hpp"
