pub mod cardseq;
pub mod freealg;
pub mod spacemodel;
pub mod topword;
