use clap::ValueEnum;
use runcorr::seqcore::SequenceFormat;
use runcorr::{BinarySequence, RunLengthEncoding};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum InputFormat {
    /// rle when the text has ':' or ',' or a digit other than 0/1, bits when
    /// it is only 0/1, signs otherwise
    #[default]
    Auto,
    Signs,
    Bits,
    Rle,
}

impl InputFormat {
    pub fn detect(text: &str) -> InputFormat {
        let text = text.trim();
        if text.contains([':', ','])
            || text
                .chars()
                .any(|c| c.is_ascii_digit() && c != '0' && c != '1')
        {
            InputFormat::Rle
        } else if !text.is_empty() && text.chars().all(|c| c == '0' || c == '1') {
            InputFormat::Bits
        } else {
            InputFormat::Signs
        }
    }
}

pub fn parse_sequence(text: &str, format: InputFormat) -> Result<BinarySequence, CliError> {
    let format = match format {
        InputFormat::Auto => InputFormat::detect(text),
        f => f,
    };
    Ok(match format {
        InputFormat::Signs | InputFormat::Auto => {
            BinarySequence::parse(text, SequenceFormat::Signs)?
        }
        InputFormat::Bits => BinarySequence::parse(text, SequenceFormat::Bits)?,
        InputFormat::Rle => text.parse::<RunLengthEncoding>()?.to_sequence(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Signs,
    Bits,
    Rle,
}

pub fn render(a: &BinarySequence, format: OutputFormat) -> String {
    match format {
        OutputFormat::Signs => a.to_sign_string(),
        OutputFormat::Bits => a.to_bit_string(),
        OutputFormat::Rle => a.to_rle().to_string(),
    }
}
