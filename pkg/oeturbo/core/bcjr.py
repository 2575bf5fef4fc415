"""
网格编码与log-MAP(BCJR)前后向递推的numba内核
"""
import numpy as np
from numba import njit

NEG_INF = -np.inf


@njit(cache=True)
def max_star(a, b, exact):
    """max*(a,b) = max(a,b) + ln(1+e^{-|a-b|})；exact为False时退化为max-log"""
    if a == NEG_INF:
        return b
    if b == NEG_INF:
        return a
    if a > b:
        if exact:
            return a + np.log1p(np.exp(b - a))
        return a
    if exact:
        return b + np.log1p(np.exp(a - b))
    return b


@njit(cache=True)
def rsc_encode_kernel(next_state, parity, tail_input, bits, state, tail_steps, forced_tail):
    """
    从state开始编码bits，再走tail_steps步尾比特

    forced_tail非空时尾部输入取forced_tail（共享尾比特），否则取反馈比特使网格归零。
    返回 (校验位, 尾输入, 尾校验, 终止前状态)。
    """
    n = bits.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for t in range(n):
        u = bits[t]
        out[t] = parity[state, u]
        state = next_state[state, u]
    block_state = state
    tail_in = np.zeros(tail_steps, dtype=np.int64)
    tail_par = np.zeros(tail_steps, dtype=np.int64)
    for k in range(tail_steps):
        if forced_tail.shape[0] > 0:
            u = forced_tail[k]
        else:
            u = tail_input[state]
        tail_in[k] = u
        tail_par[k] = parity[state, u]
        state = next_state[state, u]
    return out, tail_in, tail_par, block_state


@njit(cache=True)
def logmap_kernel(next_state, parity, sys_llr, par_llr, apriori, terminated, exact):
    """
    对数域BCJR

    分支度量 γ = ½[(1-2u)(Lsys+La) + (1-2z)Lpar]，LLR为正倾向比特0。
    terminated时末状态固定为0，否则各末状态等权。
    返回 (后验LLR, 外信息LLR)。
    """
    t_len = sys_llr.shape[0]
    s_count = next_state.shape[0]
    alpha = np.full((t_len + 1, s_count), NEG_INF)
    beta = np.full((t_len + 1, s_count), NEG_INF)
    alpha[0, 0] = 0.0

    for t in range(t_len):
        ls = 0.5 * (sys_llr[t] + apriori[t])
        lp = 0.5 * par_llr[t]
        for s in range(s_count):
            a = alpha[t, s]
            if a == NEG_INF:
                continue
            for u in range(2):
                g = ls * (1 - 2 * u) + lp * (1 - 2 * parity[s, u])
                ns = next_state[s, u]
                alpha[t + 1, ns] = max_star(alpha[t + 1, ns], a + g, exact)
        # 归一化
        m = NEG_INF
        for s in range(s_count):
            if alpha[t + 1, s] > m:
                m = alpha[t + 1, s]
        for s in range(s_count):
            if alpha[t + 1, s] != NEG_INF:
                alpha[t + 1, s] -= m

    if terminated:
        beta[t_len, 0] = 0.0
    else:
        for s in range(s_count):
            beta[t_len, s] = 0.0

    for t in range(t_len - 1, -1, -1):
        ls = 0.5 * (sys_llr[t] + apriori[t])
        lp = 0.5 * par_llr[t]
        for s in range(s_count):
            acc = NEG_INF
            for u in range(2):
                b = beta[t + 1, next_state[s, u]]
                if b == NEG_INF:
                    continue
                g = ls * (1 - 2 * u) + lp * (1 - 2 * parity[s, u])
                acc = max_star(acc, g + b, exact)
            beta[t, s] = acc
        m = NEG_INF
        for s in range(s_count):
            if beta[t, s] > m:
                m = beta[t, s]
        if m != NEG_INF:
            for s in range(s_count):
                if beta[t, s] != NEG_INF:
                    beta[t, s] -= m

    total = np.zeros(t_len)
    extrinsic = np.zeros(t_len)
    for t in range(t_len):
        ls = 0.5 * (sys_llr[t] + apriori[t])
        lp = 0.5 * par_llr[t]
        num0 = NEG_INF
        num1 = NEG_INF
        for s in range(s_count):
            a = alpha[t, s]
            if a == NEG_INF:
                continue
            for u in range(2):
                b = beta[t + 1, next_state[s, u]]
                if b == NEG_INF:
                    continue
                g = ls * (1 - 2 * u) + lp * (1 - 2 * parity[s, u])
                if u == 0:
                    num0 = max_star(num0, a + g + b, exact)
                else:
                    num1 = max_star(num1, a + g + b, exact)
        total[t] = num0 - num1
        extrinsic[t] = total[t] - sys_llr[t] - apriori[t]
    return total, extrinsic
