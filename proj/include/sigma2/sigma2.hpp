#pragma once

#include "sigma2/block_word.hpp"
#include "sigma2/circuit.hpp"
#include "sigma2/classify.hpp"
#include "sigma2/dfa.hpp"
#include "sigma2/entailment.hpp"
#include "sigma2/error.hpp"
#include "sigma2/flower.hpp"
#include "sigma2/klimit.hpp"
#include "sigma2/monoid.hpp"
#include "sigma2/reductions.hpp"
#include "sigma2/regex.hpp"
#include "sigma2/report.hpp"
#include "sigma2/serialize.hpp"
#include "sigma2/subword.hpp"
#include "sigma2/thresholds.hpp"
#include "sigma2/word.hpp"
