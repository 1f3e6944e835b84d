#pragma once

#include "antipatterns.hpp"
#include "config.hpp"
#include "experiment.hpp"
#include "hypervolume.hpp"
#include "model.hpp"
#include "model_io.hpp"
#include "moea/evaluator.hpp"
#include "moea/nsga2.hpp"
#include "moea/operators.hpp"
#include "moea/pesa2.hpp"
#include "moea/run.hpp"
#include "moea/spea2.hpp"
#include "pareto.hpp"
#include "qn.hpp"
#include "refactoring.hpp"
#include "reliability.hpp"
#include "report.hpp"
#include "sequence_io.hpp"
