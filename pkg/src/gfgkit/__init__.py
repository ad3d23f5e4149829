"""Good-for-games alternating automata: letter games, history-deterministic
witnesses, determinization and the breakpoint construction."""
