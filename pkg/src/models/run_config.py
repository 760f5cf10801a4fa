class RunConfig:
    def __init__(self, **kwargs):
        self.command = kwargs.get("command")
        self.corpus = kwargs.get("corpus")
        self.seed = kwargs.get("seed")
        self.output_dir = kwargs.get("output_dir")
        self.min_lines = kwargs.get("min_lines", 20)
        self.lexicon = kwargs.get("lexicon")
        self.rhyme_weights = kwargs.get("rhyme_weights")
        self.params = dict(kwargs.get("params", {}))

    def __repr__(self):
        attrs = (f"{k}={v}" for k, v in self.__dict__.items())
        return "{}({})".format(self.__class__.__name__, ", ".join(attrs))
