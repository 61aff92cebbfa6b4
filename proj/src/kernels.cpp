// Truth-table kernels. Rows are packed 64 to a word; a gate's value over a
// block of words is computed with bitwise operations on its children's
// blocks.

#include <algorithm>
#include <array>

#include "rectifier/error.hpp"
#include "rectifier/semantics.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rectifier {

namespace {

constexpr std::array<std::uint64_t, 6> low_patterns = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

constexpr std::size_t block_words = 64;

struct compiled {
    std::vector<gate_id> order;          // reachable gates, children first
    std::vector<std::uint32_t> local;    // gate id -> position in order
    std::vector<int> position;           // var index -> position in `over`, or -1
    std::size_t nvars = 0;
    std::size_t words = 1;
};

compiled compile(const circuit& phi, std::span<const var_id> over, const limits& lim) {
    check_cap(over.size(), lim, "truth table");
    compiled c;
    c.nvars = over.size();
    c.words = over.size() <= 6 ? 1 : (std::size_t{1} << (over.size() - 6));
    auto mark = phi.reachable();
    c.local.assign(mark.size(), 0);
    std::uint32_t max_var = 0;
    for (gate_id g = 0; g <= phi.root(); ++g) {
        if (!mark[g]) continue;
        c.local[g] = static_cast<std::uint32_t>(c.order.size());
        c.order.push_back(g);
        const auto& n = phi.node(g);
        if (n.kind == gate_kind::variable || n.kind == gate_kind::decision) max_var = std::max(max_var, index_of(n.var) + 1);
    }
    for (auto v : over) max_var = std::max(max_var, index_of(v) + 1);
    c.position.assign(max_var, -1);
    for (std::size_t k = 0; k < over.size(); ++k) c.position[index_of(over[k])] = static_cast<int>(k);
    for (auto g : c.order) {
        const auto& n = phi.node(g);
        if ((n.kind == gate_kind::variable || n.kind == gate_kind::decision) && c.position[index_of(n.var)] < 0)
            throw input_error("truth table: circuit variable " + std::to_string(index_of(n.var)) + " is not in the enumerated set");
    }
    return c;
}

std::uint64_t var_mask(const compiled& c, var_id v, std::size_t word) {
    auto shift = c.nvars - 1 - static_cast<std::size_t>(c.position[index_of(v)]);
    if (shift < 6) return low_patterns[shift];
    return ((word >> (shift - 6)) & 1U) ? ~std::uint64_t{0} : 0;
}

// Evaluates words [begin, end) into out; scratch holds order.size() * (end-begin) words.
void eval_block(const circuit& phi, const compiled& c, std::size_t begin, std::size_t end, std::vector<std::uint64_t>& scratch,
                std::uint64_t* out) {
    const std::size_t width = end - begin;
    scratch.resize(c.order.size() * width);
    for (std::size_t i = 0; i < c.order.size(); ++i) {
        const auto g = c.order[i];
        const auto& n = phi.node(g);
        auto kids = phi.children(g);
        std::uint64_t* dst = scratch.data() + i * width;
        auto src = [&](std::size_t k) { return scratch.data() + c.local[kids[k]] * width; };
        switch (n.kind) {
        case gate_kind::constant: std::fill(dst, dst + width, n.value ? ~std::uint64_t{0} : 0); break;
        case gate_kind::variable:
            for (std::size_t w = 0; w < width; ++w) dst[w] = var_mask(c, n.var, begin + w);
            break;
        case gate_kind::negation: {
            const auto* a = src(0);
            for (std::size_t w = 0; w < width; ++w) dst[w] = ~a[w];
            break;
        }
        case gate_kind::conjunction:
        case gate_kind::disjunction: {
            const bool is_and = n.kind == gate_kind::conjunction;
            std::copy(src(0), src(0) + width, dst);
            for (std::size_t k = 1; k < kids.size(); ++k) {
                const auto* a = src(k);
                if (is_and)
                    for (std::size_t w = 0; w < width; ++w) dst[w] &= a[w];
                else
                    for (std::size_t w = 0; w < width; ++w) dst[w] |= a[w];
            }
            break;
        }
        case gate_kind::decision: {
            const auto* lo = src(0);
            const auto* hi = src(1);
            for (std::size_t w = 0; w < width; ++w) {
                auto m = var_mask(c, n.var, begin + w);
                dst[w] = (~m & lo[w]) | (m & hi[w]);
            }
            break;
        }
        }
    }
    const std::uint64_t* root = scratch.data() + c.local[phi.root()] * width;
    std::copy(root, root + width, out);
}

void mask_tail(std::vector<std::uint64_t>& words, std::size_t nvars) {
    if (nvars < 6) words[0] &= (std::uint64_t{1} << (std::size_t{1} << nvars)) - 1;
}

}  // namespace

truth_table truth_table_serial(const circuit& phi, std::span<const var_id> over, const limits& lim) {
    auto c = compile(phi, over, lim);
    std::vector<std::uint64_t> words(c.words, 0);
    std::vector<std::uint64_t> scratch;
    for (std::size_t begin = 0; begin < c.words; begin += block_words)
        eval_block(phi, c, begin, std::min(c.words, begin + block_words), scratch, words.data() + begin);
    mask_tail(words, c.nvars);
    return truth_table({over.begin(), over.end()}, std::move(words));
}

truth_table truth_table_parallel(const circuit& phi, std::span<const var_id> over, const limits& lim) {
    auto c = compile(phi, over, lim);
    std::vector<std::uint64_t> words(c.words, 0);
    const auto blocks = static_cast<std::int64_t>((c.words + block_words - 1) / block_words);
    if (blocks <= 1) {
        std::vector<std::uint64_t> scratch;
        eval_block(phi, c, 0, c.words, scratch, words.data());
    } else {
#pragma omp parallel
        {
            std::vector<std::uint64_t> scratch;
#pragma omp for schedule(static)
            for (std::int64_t b = 0; b < blocks; ++b) {
                auto begin = static_cast<std::size_t>(b) * block_words;
                eval_block(phi, c, begin, std::min(c.words, begin + block_words), scratch, words.data() + begin);
            }
        }
    }
    mask_tail(words, c.nvars);
    return truth_table({over.begin(), over.end()}, std::move(words));
}

truth_table truth_table_reference(const circuit& phi, std::span<const var_id> over, const limits& lim) {
    check_cap(over.size(), lim, "truth table");
    std::vector<var_id> vs(over.begin(), over.end());
    const std::uint64_t rows = std::uint64_t{1} << vs.size();
    std::vector<std::uint64_t> words(std::max<std::uint64_t>(1, rows / 64), 0);
    for (std::uint64_t r = 0; r < rows; ++r)
        if (eval(phi, assignment::from_index(vs, r))) words[r >> 6] |= std::uint64_t{1} << (r & 63);
    return truth_table(std::move(vs), std::move(words));
}

}  // namespace rectifier
