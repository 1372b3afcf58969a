#include <algorithm>

#include "ag/align.hpp"

namespace ag::align {

const char* to_string(OpKind kind) {
  switch (kind) {
    case OpKind::Cor: return "COR";
    case OpKind::Sub: return "SUB";
    case OpKind::Ins: return "INS";
    case OpKind::Del: return "DEL";
  }
  return "?";
}

long long EditScript::count(OpKind kind) const {
  long long n = 0;
  for (const EditOp& op : ops) {
    if (op.kind == kind) ++n;
  }
  return n;
}

namespace {

struct TokenInfo {
  std::string raw;
  std::string key;
  TokenClass cls = TokenClass::Lexical;
};

std::vector<TokenInfo> analyze(const std::vector<std::string>& tokens,
                               const NormPolicy& policy) {
  std::vector<TokenInfo> out;
  out.reserve(tokens.size());
  for (const std::string& t : tokens) {
    TokenInfo info;
    info.raw = t;
    auto norm = normalize(t, policy);
    for (const NormToken& n : norm) {
      if (!info.key.empty()) info.key += ' ';
      info.key += n.text;
    }
    info.cls = norm.size() == 1 ? norm[0].cls : TokenClass::Lexical;
    out.push_back(std::move(info));
  }
  return out;
}

bool tokens_equal(const TokenInfo& ref, const TokenInfo& hyp,
                  const NormPolicy& policy, FragmentMode fragments) {
  if (ref.key.empty() && hyp.key.empty()) return ref.raw == hyp.raw;
  if (ref.key == hyp.key) return true;
  if (fragments == FragmentMode::Lenient && ref.cls == TokenClass::Fragment) {
    for (const auto& suffix : policy.fragment_suffixes) {
      if (ref.key.size() > suffix.size() && ref.key.ends_with(suffix)) {
        std::string prefix = ref.key.substr(0, ref.key.size() - suffix.size());
        if (hyp.key.size() >= prefix.size() && hyp.key.starts_with(prefix)) {
          return true;
        }
      }
    }
  }
  return false;
}

}  // namespace

EditScript align(const std::vector<std::string>& ref,
                 const std::vector<std::string>& hyp, const NormPolicy& policy,
                 Costs costs, FragmentMode fragments) {
  if (costs.sub <= 0 || costs.ins <= 0 || costs.del <= 0) {
    throw Error(ErrorKind::InvalidArgument, "alignment costs must be positive");
  }
  policy.check();

  auto ref_info = analyze(ref, policy);
  auto hyp_info = analyze(hyp, policy);
  const std::size_t R = ref.size(), H = hyp.size();

  std::vector<long long> cost((R + 1) * (H + 1), 0);
  std::vector<OpKind> op((R + 1) * (H + 1), OpKind::Cor);
  auto at = [&](std::size_t i, std::size_t j) { return i * (H + 1) + j; };

  for (std::size_t i = 1; i <= R; ++i) {
    cost[at(i, 0)] = cost[at(i - 1, 0)] + costs.del;
    op[at(i, 0)] = OpKind::Del;
  }
  for (std::size_t j = 1; j <= H; ++j) {
    cost[at(0, j)] = cost[at(0, j - 1)] + costs.ins;
    op[at(0, j)] = OpKind::Ins;
  }
  for (std::size_t i = 1; i <= R; ++i) {
    for (std::size_t j = 1; j <= H; ++j) {
      bool eq = tokens_equal(ref_info[i - 1], hyp_info[j - 1], policy, fragments);
      // Candidates in tie-break preference order: Cor/Sub, then Del, then
      // Ins; strict improvement required to displace an earlier candidate.
      long long best = cost[at(i - 1, j - 1)] + (eq ? 0 : costs.sub);
      OpKind kind = eq ? OpKind::Cor : OpKind::Sub;
      long long del = cost[at(i - 1, j)] + costs.del;
      if (del < best) {
        best = del;
        kind = OpKind::Del;
      }
      long long ins = cost[at(i, j - 1)] + costs.ins;
      if (ins < best) {
        best = ins;
        kind = OpKind::Ins;
      }
      cost[at(i, j)] = best;
      op[at(i, j)] = kind;
    }
  }

  EditScript script;
  script.total_cost = cost[at(R, H)];
  std::size_t i = R, j = H;
  while (i > 0 || j > 0) {
    switch (op[at(i, j)]) {
      case OpKind::Cor:
      case OpKind::Sub:
        script.ops.push_back({op[at(i, j)], i - 1, j - 1});
        --i;
        --j;
        break;
      case OpKind::Del:
        script.ops.push_back({OpKind::Del, i - 1, std::nullopt});
        --i;
        break;
      case OpKind::Ins:
        script.ops.push_back({OpKind::Ins, std::nullopt, j - 1});
        --j;
        break;
    }
  }
  std::reverse(script.ops.begin(), script.ops.end());
  return script;
}

int pct_tenths(long long numer, long long denom) {
  if (denom <= 0) return 0;
  return static_cast<int>((2000 * numer + denom) / (2 * denom));
}

std::string render_tenths(int tenths) {
  std::string out = std::to_string(tenths / 10);
  out += '.';
  out += static_cast<char>('0' + std::abs(tenths % 10));
  return out;
}

CoverageReport coverage(const std::vector<std::string>& ref,
                        const std::vector<std::string>& hyp,
                        const NormPolicy& policy) {
  if (ref.empty()) {
    throw Error(ErrorKind::InvalidArgument,
                "coverage requires a non-empty reference");
  }
  EditScript script = align(ref, hyp, policy);
  long long n = static_cast<long long>(ref.size());
  return CoverageReport{
      pct_tenths(script.count(OpKind::Cor), n),
      pct_tenths(script.count(OpKind::Del), n),
      pct_tenths(script.count(OpKind::Sub), n),
  };
}

}  // namespace ag::align
