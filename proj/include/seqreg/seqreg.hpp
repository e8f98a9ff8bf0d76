#pragma once

#include "seqreg/experiments.hpp"
#include "seqreg/model.hpp"
#include "seqreg/oracle.hpp"
#include "seqreg/random.hpp"
#include "seqreg/sequences.hpp"
#include "seqreg/thresholding.hpp"
#include "seqreg/tikhonov.hpp"
