// Copyright 2026 The hyquant Authors
// SPDX-License-Identifier: Apache-2.0

// Merge two sorted-list determinants, then convert the result to a first-quantized state
// and back.

#include "hyquant/conversion.hpp"
#include "hyquant/io.hpp"

#include <iostream>
#include <random>

int main() {
    using namespace hyq;
    const auto a = encode_sorted_list(OccupationBitstring::from_orbitals(4, {3}), 2);
    const auto b = encode_sorted_list(OccupationBitstring::from_orbitals(4, {1}), 1);

    const MergeResult merged = tensor_product_merge(a, b);
    std::cout << "duplicate probability " << merged.duplicate_probability() << '\n';
    const EncodedState sl = merged.extract_registers(2);
    std::cout << io::state_to_string(sl);

    std::mt19937_64 rng(7);
    const auto [fq, up] = second_to_first(sl, 2, rng);
    std::cout << io::state_to_string(fq);
    std::cout << "sl->fq toffoli " << up.gate_count.toffoli_equiv << ", attempts " << up.attempts << '\n';

    const auto [back, down] = first_to_second(fq, 2);
    std::cout << io::state_to_string(back);
    std::cout << "fq->sl toffoli " << down.gate_count.toffoli_equiv << '\n';
    return 0;
}
