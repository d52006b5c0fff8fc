use std::io::{BufRead, Write};

use super::{GameState, Player, Strategy};

/// Terminal player: prints the position and reads a vertex id per turn.
///
/// Prompts name the player to move, so one instance can serve both seats.
/// `q`, `quit` or end of input abandon the game.
pub struct InteractiveStrategy<R, W> {
    side: Player,
    input: R,
    output: W,
}

impl<R: BufRead, W: Write> InteractiveStrategy<R, W> {
    pub fn new(side: Player, input: R, output: W) -> Self {
        InteractiveStrategy {
            side,
            input,
            output,
        }
    }

    pub fn into_output(self) -> W {
        self.output
    }

    fn show(&mut self, state: &GameState<'_>) -> std::io::Result<()> {
        let out = &mut self.output;
        writeln!(out, "-- {} to move (move {})", state.to_move(), state.marked_count())?;
        let marked: Vec<String> = state
            .sequence()
            .iter()
            .map(|&v| format!("{v}(b={})", state.back_degree(v).unwrap_or(0)))
            .collect();
        writeln!(out, "marked: [{}]", marked.join(", "))?;
        writeln!(out, "score so far: {}", state.score())?;
        let legal: Vec<String> = state
            .unmarked()
            .map(|v| format!("{v}(+{})", state.marked_neighbors(v)))
            .collect();
        writeln!(out, "legal: [{}]", legal.join(", "))?;
        Ok(())
    }
}

impl<R: BufRead, W: Write> Strategy for InteractiveStrategy<R, W> {
    fn name(&self) -> String {
        format!("human-{}", self.side)
    }

    fn choose(&mut self, state: &GameState<'_>) -> Option<usize> {
        self.show(state).ok()?;
        loop {
            write!(self.output, "{}> ", state.to_move()).ok()?;
            self.output.flush().ok()?;
            let mut line = String::new();
            if self.input.read_line(&mut line).ok()? == 0 {
                return None;
            }
            let line = line.trim();
            if line == "q" || line == "quit" {
                return None;
            }
            match line.parse::<usize>() {
                Ok(v) => match state.legality(v) {
                    Ok(()) => return Some(v),
                    Err(why) => {
                        writeln!(self.output, "vertex {v} is {why}; try again").ok()?;
                    }
                },
                Err(_) => {
                    writeln!(self.output, "'{line}' is not a vertex id; try again").ok()?;
                }
            }
        }
    }
}
