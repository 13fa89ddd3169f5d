// Copyright 2026 The joinfer Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace joinfer {

// Token-set measures. Inputs are token lists; duplicates are ignored.
double token_jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b);
/// |A ∩ B| / |A|; 1 when A is empty and B is empty, 0 when only A is empty.
double token_containment(const std::vector<std::string>& a, const std::vector<std::string>& b);

std::size_t levenshtein(std::string_view a, std::string_view b);
/// 1 - levenshtein / max(len); 1 for two empty strings.
double edit_similarity(std::string_view a, std::string_view b);

double jaro(std::string_view a, std::string_view b);
/// Standard Winkler boost: prefix scale 0.1, prefix capped at 4 characters.
double jaro_winkler(std::string_view a, std::string_view b);

/// Cosine similarity of character-trigram count vectors built per token
/// (tokens shorter than three characters count as one gram).
double trigram_cosine(const std::vector<std::string>& a_tokens,
                      const std::vector<std::string>& b_tokens);

std::string join_tokens(const std::vector<std::string>& tokens, std::string_view sep = " ");

}  // namespace joinfer
