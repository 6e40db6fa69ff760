class jjava_lang_Object{
    public:inline jboolean IsSame(JNIEnv*,jjava_lang_Object);
};
