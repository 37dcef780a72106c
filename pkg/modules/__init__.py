# DuplexVision Modules
