#pragma once

#include "fefs/baselines.hpp"
#include "fefs/classify.hpp"
#include "fefs/data.hpp"
#include "fefs/entropy.hpp"
#include "fefs/error.hpp"
#include "fefs/eval.hpp"
#include "fefs/fuzzy.hpp"
#include "fefs/io.hpp"
#include "fefs/manifest.hpp"
#include "fefs/random.hpp"
