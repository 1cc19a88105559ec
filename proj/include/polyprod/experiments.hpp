#pragma once

#include <polyprod/experiments/binomial.hpp>
#include <polyprod/experiments/census.hpp>
#include <polyprod/experiments/character_sums.hpp>
#include <polyprod/experiments/densities.hpp>
#include <polyprod/experiments/random_model.hpp>
#include <polyprod/experiments/square_sieve.hpp>
