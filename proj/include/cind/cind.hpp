#pragma once

#include "cind/adversaries.hpp"
#include "cind/codes.hpp"
#include "cind/criteria.hpp"
#include "cind/eval.hpp"
#include "cind/harness.hpp"
#include "cind/json_io.hpp"
#include "cind/learner.hpp"
#include "cind/nat.hpp"
#include "cind/numbering.hpp"
#include "cind/program_index.hpp"
#include "cind/term.hpp"
#include "cind/text.hpp"
#include "cind/transforms.hpp"
#include "cind/zoo.hpp"
