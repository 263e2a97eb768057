from advtext.victims.base import ClassifierModel, CountingModel, FunctionClassifier, TextToTextModel, VictimModel
from advtext.victims.linear import LinearTextClassifier, accuracy, build_vocabulary, train_classifier
from advtext.victims.translation import DictionaryTranslator
