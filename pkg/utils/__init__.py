# DuplexVision Utils
